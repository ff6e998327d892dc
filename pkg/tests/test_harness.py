import io
import json
import math
import subprocess
import sys

import pytest

from legendre_integrals.cli import FUNCTIONS, eval_function, main
from legendre_integrals.errors import DomainError
from legendre_integrals.harness import (CSV_COLUMNS, EXIT_BELOW_THRESHOLD, EXIT_CONFIG, EXIT_NUMERICAL,
                                        EXIT_OK, CaseRecord, ConfigError, SuiteReport, SweepConfig,
                                        case_from_params, config_from_mapping, exit_code, parse_config,
                                        records_from_csv, report_from_json, report_to_csv, report_to_json,
                                        run_suite, sample_case)
from legendre_integrals.identities import IdentityId

I = IdentityId
SMALL = dict(suites=["CHEB_ORTHO", "HEINE", "TOROIDAL", "SPH_ADD"], cases_per_suite=4)


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    rc = main(argv, out=out, err=err)
    return rc, out.getvalue(), err.getvalue()


# configuration

def test_parse_config_empty_gives_defaults():
    cfg = parse_config("")
    assert cfg.suites == tuple(IdentityId)
    assert (cfg.cases_per_suite, cfg.seed, cfg.tol, cfg.format) == (40, 0, 1e-7, "json")


def test_parse_config_single_suite():
    cfg = parse_config('{"suites": ["TOROIDAL"], "seed": 7}')
    assert cfg.suites == (I.TOROIDAL,) and cfg.seed == 7


def test_parse_config_unknown_suite_named():
    with pytest.raises(ConfigError) as info:
        parse_config('{"suites": ["NOT_A_SUITE"]}')
    assert "NOT_A_SUITE" in str(info.value) and info.value.path == "$.suites"


@pytest.mark.parametrize("doc,path", [
    ('{"cases_per_suite": 0}', "$.cases_per_suite"),
    ('{"tol": -1}', "$.tol"),
    ('{"seed": -3}', "$.seed"),
    ('{"format": "xml"}', "$.format"),
    ('{"parallelism": 0}', "$.parallelism"),
    ('{"colour": "red"}', "$.colour"),
    ('{"suites": "TOROIDAL"}', "$.suites"),
    ('[1, 2]', "$"),
    ('{not json', "$"),
])
def test_parse_config_errors_carry_path(doc, path):
    with pytest.raises(ConfigError) as info:
        parse_config(doc)
    assert info.value.path == path


def test_config_echo_ignores_output_and_workers():
    a = config_from_mapping({"parallelism": 8, "output": "x.json"})
    b = SweepConfig()
    assert a.echo() == b.echo() and a.digest() == b.digest()
    assert a.workers() == 8
    assert config_from_mapping({"parallelism": "auto"}).workers() >= 1


# sampling and runs

def test_sampling_is_per_suite_and_index():
    a = sample_case(5, I.PROLATE, 3).params
    assert sample_case(5, I.PROLATE, 3).params == a
    assert sample_case(5, I.PROLATE, 4).params != a
    assert sample_case(6, I.PROLATE, 3).params != a


def test_suites_do_not_shift_each_other():
    one = run_suite(config_from_mapping({"suites": ["HEINE"], "cases_per_suite": 3}))
    two = run_suite(config_from_mapping({"suites": ["CHEB_ORTHO", "HEINE"], "cases_per_suite": 3}))
    heine = [c for c in two.cases if c.id == "HEINE"]
    assert [c.params for c in heine] == [c.params for c in one.cases]


def test_run_twice_identical_bytes():
    cfg = config_from_mapping(SMALL)
    assert report_to_json(run_suite(cfg)) == report_to_json(run_suite(cfg))


def test_parallel_matches_serial_bytes():
    serial = run_suite(config_from_mapping({**SMALL, "parallelism": 1}))
    parallel = run_suite(config_from_mapping({**SMALL, "parallelism": 8}))
    assert report_to_json(serial) == report_to_json(parallel)
    assert report_to_csv(serial) == report_to_csv(parallel)


def test_forced_degree_ortho_case():
    cfg = config_from_mapping({"suites": ["DEGREE_ORTHO"], "cases_per_suite": 1})
    rep = run_suite(cfg, cases=[case_from_params(I.DEGREE_ORTHO, dict(n=0, n2=0, m=0))])
    assert len(rep.cases) == 1
    assert rep.cases[0].lhs.real == pytest.approx(2.0, rel=1e-12)
    assert json.loads(report_to_json(rep))["cases"][0]["lhs"]["re"] == pytest.approx(2.0, rel=1e-12)


def test_case_from_params_missing():
    with pytest.raises(ConfigError):
        case_from_params(I.HEINE, dict(z=2.0))


def test_summary_matches_cases():
    rep = run_suite(config_from_mapping(SMALL))
    s = rep.summary
    assert s["total_cases"] == len(rep.cases) == 16
    assert s["total_passed"] == sum(c.passed for c in rep.cases)
    for sid, row in s["suites"].items():
        mine = [c for c in rep.cases if c.id == sid]
        assert row["cases"] == len(mine)
        assert row["passed"] == sum(c.passed for c in mine)
        assert row["worst_rel_error"] == max(c.rel_error for c in mine)
    assert s["wall_seconds"] is None
    assert all(c.millis is None for c in rep.cases)
    timed = run_suite(config_from_mapping({**SMALL, "timing": True}))
    assert timed.summary["wall_seconds"] > 0


# serialization

def test_json_round_trip():
    rep = run_suite(config_from_mapping(SMALL))
    text = report_to_json(rep)
    back = report_from_json(text)
    assert back.cases == rep.cases
    assert back.summary == json.loads(json.dumps(rep.summary))
    assert back.config == rep.config and back.config_hash == rep.config_hash
    assert report_to_json(back) == text


def test_json_schema_fields():
    doc = json.loads(report_to_json(run_suite(config_from_mapping(SMALL))))
    assert {"config", "summary", "cases"} <= set(doc)
    keys = list(doc["cases"][0])
    want = ["id", "params", "lhs", "rhs", "rel_error", "imag_leak", "pass", "evaluations", "millis"]
    assert keys[:len(want)] == want


def test_csv_matches_json():
    rep = run_suite(config_from_mapping(SMALL))
    text = report_to_csv(rep)
    assert text.splitlines()[0].split(",") == list(CSV_COLUMNS)
    assert "\r\n" in text
    rows = records_from_csv(text)
    back = report_from_json(report_to_json(rep)).cases
    assert rows == back


def test_non_finite_values_serialize():
    rec = CaseRecord("HEINE", {"z": 2.0, "x": 0.0}, complex(math.nan, 0), complex(1, 0),
                     math.inf, math.inf, False, 0, None, False, "boom")
    cfg = config_from_mapping({"suites": ["HEINE"], "cases_per_suite": 1})
    rep = SuiteReport(cfg.echo(), cfg.digest(), "0", {"suites": {"HEINE": {
        "cases": 1, "passed": 0, "non_converged": 1, "worst_rel_error": math.inf, "suite_pass": False}}}, [rec])
    text = report_to_json(rep)
    json.loads(text)
    assert "NaN" not in text and "Infinity" not in text
    back = report_from_json(text).cases[0]
    assert math.isnan(back.lhs.real) and math.isinf(back.rel_error)


# exit codes

def _fake(rows):
    return SuiteReport({}, "", "0", {"suites": rows}, [])


def test_exit_code_contract():
    ok = {"cases": 40, "passed": 40, "non_converged": 0, "worst_rel_error": 0.0, "suite_pass": True}
    low = {"cases": 40, "passed": 30, "non_converged": 0, "worst_rel_error": 1.0, "suite_pass": False}
    crash = {"cases": 40, "passed": 30, "non_converged": 3, "worst_rel_error": 1.0, "suite_pass": False}
    assert exit_code(_fake({"A": ok})) == EXIT_OK
    assert exit_code(_fake({"A": ok, "B": low})) == EXIT_BELOW_THRESHOLD
    assert exit_code(_fake({"A": ok, "B": crash})) == EXIT_NUMERICAL


# command line

def test_cli_eval_examples():
    assert _run(["eval", "legendre_q", "--deg", "0", "--ord", "0", "--arg", "2"])[1].strip() == "0.5493061443340549"
    assert _run(["eval", "--fn", "legendre_q", "--deg", "0", "--ord", "0", "--arg", "2"])[1].strip() == \
        "0.5493061443340549"
    assert float(_run(["eval", "ferrers_p", "--n", "2", "--m", "0", "--x", "0"])[1]) == -0.5
    rc, out, _ = _run(["eval", "chi", "--system", "toroidal", "--sigma", "1", "--sigma2", "1", "--psi", "0"])
    assert rc == 0 and float(out) == 1.0


def test_cli_eval_complex_output():
    # half-integer order carries a factor e^{i pi mu}
    rc, out, _ = _run(["eval", "legendre_q", "--deg", "0", "--ord", "0.5", "--arg", "2"])
    re, im = out.split()
    assert rc == 0 and abs(float(re)) < 1e-15 and float(im[:-1]) == pytest.approx(0.492953382622861, rel=1e-13)
    assert _run(["eval", "legendre_q", "--deg", "0", "--ord", "0", "--arg", "0.5"])[0] == EXIT_CONFIG
    rc, out, _ = _run(["eval", "gamma_ratio", "--a", "5", "--b", "3"])
    assert rc == 0 and float(out) == pytest.approx(12.0)


def test_cli_eval_errors():
    assert _run(["eval", "nope", "--x", "1"])[0] == EXIT_CONFIG
    assert _run(["eval", "ferrers_p", "--n", "2", "--m", "0", "--x", "3"])[0] == EXIT_CONFIG
    assert _run(["eval", "ferrers_p", "--n", "2.5", "--m", "0", "--x", "0.1"])[0] == EXIT_CONFIG
    assert _run(["eval", "ferrers_p", "--n", "2"])[0] == EXIT_CONFIG
    assert _run(["eval", "ferrers_p", "--n", "2", "--x", "0.1", "--y", "3"])[0] == EXIT_CONFIG
    assert _run(["eval"])[0] == EXIT_CONFIG


def test_eval_function_vocabulary():
    assert eval_function("legendre_poly", {"n": "3", "x": "0.5"}) == pytest.approx(-0.4375)
    assert eval_function("heine_sum", {"z": "10", "x": "1"}) == pytest.approx(1 / 3)
    with pytest.raises(DomainError):
        eval_function("chi", {"system": "cubic", "r": "1"})
    assert set(FUNCTIONS) >= {"legendre_q", "ferrers_p", "chi"}


def test_cli_list_commands():
    rc, out, _ = _run(["list-suites"])
    assert rc == 0 and all(str(i) in out for i in IdentityId)
    rc, out, _ = _run(["list-suites", "--verbose"])
    assert "guard" in out
    rc, out, _ = _run(["list-functions"])
    assert rc == 0 and "legendre_q" in out


def test_cli_verify_small(tmp_path):
    path = tmp_path / "r.json"
    rc, _, err = _run(["verify", "--suite", "CHEB_ORTHO", "--suite", "HEINE", "--cases", "3",
                       "--out", str(path), "--quiet"])
    assert rc == 0 and err == ""
    doc = json.loads(path.read_text())
    assert doc["summary"]["total_cases"] == 6
    rc, out, err = _run(["verify", "--suite", "HEINE", "--cases", "2", "--format", "csv"])
    assert rc == 0 and out.startswith("id,params") and "PASS HEINE" in err


def test_cli_verify_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"suites": ["TOROIDAL"], "seed": 7, "cases_per_suite": 2}')
    rc, out, _ = _run(["verify", "--config", str(cfg), "--quiet"])
    doc = json.loads(out)
    assert rc == 0 and doc["config"]["seed"] == 7 and doc["config"]["suites"] == ["TOROIDAL"]
    # command-line flags override the file
    rc, out, _ = _run(["verify", "--config", str(cfg), "--seed", "9", "--quiet"])
    assert json.loads(out)["config"]["seed"] == 9


def test_cli_verify_config_errors(tmp_path):
    assert _run(["verify", "--suite", "NOT_A_SUITE"])[0] == EXIT_CONFIG
    assert _run(["verify", "--cases", "0"])[0] == EXIT_CONFIG
    assert _run(["verify", "--jobs", "many"])[0] == EXIT_CONFIG
    assert _run(["verify", "--config", str(tmp_path / "missing.json")])[0] == EXIT_CONFIG
    bad = tmp_path / "bad.json"
    bad.write_text('{"suites": ["NOT_A_SUITE"]}')
    rc, _, err = _run(["verify", "--config", str(bad)])
    assert rc == EXIT_CONFIG and "NOT_A_SUITE" in err


def test_cli_below_threshold_exit():
    # an absurd tolerance makes quadrature-based suites fail
    rc, _, _ = _run(["verify", "--suite", "SPH_COR", "--cases", "4", "--tol", "1e-300", "--quiet"])
    assert rc == EXIT_BELOW_THRESHOLD


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "legendre_integrals", "eval", "ferrers_p",
                        "--n", "2", "--m", "0", "--x", "0"], capture_output=True, text=True)
    assert r.returncode == 0 and float(r.stdout) == -0.5
