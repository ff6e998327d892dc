"""Sweep configuration, deterministic sampling, execution and reports."""

from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import asdict, dataclass, field
import hashlib
import io
import json
import math
import os
import time
import zlib

import numpy as np

from .identities import (IdentityCase, IdentityId, PARAM_NAMES, default_domain,
                         evaluate_identity, near_singular_tags)

__all__ = [
    "ConfigError", "SweepConfig", "CaseRecord", "SuiteReport", "parse_config",
    "sample_case", "run_suite", "report_to_json", "report_from_json",
    "report_to_csv", "exit_code", "PASS_FRACTION", "NONCONVERGED_QUOTA",
    "EXIT_OK", "EXIT_BELOW_THRESHOLD", "EXIT_CONFIG", "EXIT_NUMERICAL",
]

EXIT_OK = 0
EXIT_BELOW_THRESHOLD = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# a suite passes when at least this fraction of its cases pass
PASS_FRACTION = 0.95
# more non-converged cases than this fraction is a numerical failure
NONCONVERGED_QUOTA = 0.05

CSV_COLUMNS = ("id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error",
               "imag_leak", "pass", "evaluations", "millis", "converged", "note")


class ConfigError(ValueError):
    """Invalid sweep configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


def _version():
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        from . import __version__
        return __version__


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep settings.

    ``parallelism`` is a positive integer or ``"auto"`` (one worker per
    CPU).  ``timing`` adds wall-clock fields to the report; it is off by
    default so that reports are byte-reproducible.
    """

    suites: tuple = tuple(IdentityId)
    cases_per_suite: int = 40
    seed: int = 0
    tol: float = 1e-7
    output: str = None
    format: str = "json"
    parallelism: object = 1
    timing: bool = False

    def echo(self):
        """Fields that determine report content; the output path and worker
        count are left out so they cannot change the report bytes."""
        d = asdict(self)
        del d["output"], d["parallelism"]
        d["suites"] = [str(s) for s in self.suites]
        return d

    def digest(self):
        text = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()

    def workers(self):
        if self.parallelism == "auto":
            return os.cpu_count() or 1
        return int(self.parallelism)


_FIELDS = {"suites", "cases_per_suite", "seed", "tol", "output", "format",
           "parallelism", "timing"}


def _check_int(path, v, lo=None, hi=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(path, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ConfigError(path, f"must be >= {lo}")
    if hi is not None and v > hi:
        raise ConfigError(path, f"must be <= {hi}")
    return v


def config_from_mapping(doc, base=None):
    """Validate a mapping of SweepConfig fields, applying defaults."""
    if not isinstance(doc, dict):
        raise ConfigError("$", "config document must be an object")
    unknown = sorted(set(doc) - _FIELDS)
    if unknown:
        raise ConfigError(f"$.{unknown[0]}", f"unknown key(s) {unknown}")
    kw = {}
    if "suites" in doc:
        s = doc["suites"]
        if not isinstance(s, list):
            raise ConfigError("$.suites", "expected a list of identity ids")
        ids = []
        bad = []
        for i, name in enumerate(s):
            try:
                ids.append(IdentityId(str(name)))
            except ValueError:
                bad.append(str(name))
        if bad:
            raise ConfigError("$.suites", f"unknown suite(s): {', '.join(bad)}")
        if not ids:
            raise ConfigError("$.suites", "at least one suite is required")
        kw["suites"] = tuple(dict.fromkeys(ids))
    if "cases_per_suite" in doc:
        kw["cases_per_suite"] = _check_int("$.cases_per_suite", doc["cases_per_suite"], 1)
    if "seed" in doc:
        kw["seed"] = _check_int("$.seed", doc["seed"], 0, 2 ** 64 - 1)
    if "tol" in doc:
        t = doc["tol"]
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not t > 0 or not math.isfinite(t):
            raise ConfigError("$.tol", "expected a positive number")
        kw["tol"] = float(t)
    if "output" in doc:
        o = doc["output"]
        if o is not None and not isinstance(o, str):
            raise ConfigError("$.output", "expected a path string or null")
        kw["output"] = o
    if "format" in doc:
        if doc["format"] not in ("json", "csv"):
            raise ConfigError("$.format", "expected 'json' or 'csv'")
        kw["format"] = doc["format"]
    if "parallelism" in doc:
        p = doc["parallelism"]
        if p != "auto":
            _check_int("$.parallelism", p, 1)
        kw["parallelism"] = p
    if "timing" in doc:
        if not isinstance(doc["timing"], bool):
            raise ConfigError("$.timing", "expected true or false")
        kw["timing"] = doc["timing"]
    base = base or SweepConfig()
    d = {**{k: getattr(base, k) for k in _FIELDS}, **kw}
    return SweepConfig(**d)


def parse_config(text):
    """Parse a JSON config document into a SweepConfig.

    An empty (or whitespace-only) document selects every default.
    """
    if not text.strip():
        return SweepConfig()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"malformed JSON: {exc}") from None
    return config_from_mapping(doc)


# ---------------------------------------------------------------------------
# Sampling


def _rng(seed, ident, index):
    """Counter-based generator keyed by (seed, suite); the case index sits in
    the top counter word, so every case has its own stream."""
    key = int(seed) | (zlib.crc32(str(ident).encode()) << 64)
    bg = np.random.Philox(key=key, counter=[0, 0, 0, int(index)])
    return np.random.Generator(bg)


def sample_case(seed, ident, index, tol=1e-7):
    ident = IdentityId(str(ident))
    params = default_domain(ident).sample(_rng(seed, ident, index), index)
    return IdentityCase(ident, params, tol=tol, tags=near_singular_tags(ident, params))


# ---------------------------------------------------------------------------
# Reports


@dataclass
class CaseRecord:
    """Serializable view of one IdentityReport."""

    id: str
    params: dict
    lhs: complex
    rhs: complex
    rel_error: float
    imag_leak: float
    passed: bool
    evaluations: int
    millis: float = None
    converged: bool = True
    note: str = ""

    @classmethod
    def from_report(cls, r):
        return cls(str(r.case.id), dict(r.case.params), complex(r.lhs), complex(r.rhs),
                   float(r.rel_error), float(r.imag_leak), bool(r.passed),
                   int(r.evaluations), r.millis, bool(r.converged), r.note)


@dataclass
class SuiteReport:
    config: dict
    config_hash: str
    version: str
    summary: dict
    cases: list = field(default_factory=list)

    def suite_passed(self, ident):
        return self.summary["suites"][str(ident)]["suite_pass"]


def _summarize(cases, config, wall):
    suites = {}
    for ident in config.suites:
        rows = [c for c in cases if c.id == str(ident)]
        n = len(rows)
        npass = sum(c.passed for c in rows)
        nconv = sum(not c.converged for c in rows)
        worst = max((c.rel_error for c in rows), default=0.0)
        suites[str(ident)] = {
            "cases": n,
            "passed": npass,
            "non_converged": nconv,
            "worst_rel_error": worst,
            "suite_pass": n > 0 and npass >= PASS_FRACTION * n,
        }
    return {
        "total_cases": len(cases),
        "total_passed": sum(c.passed for c in cases),
        "suites_passed": sum(s["suite_pass"] for s in suites.values()),
        "suites": suites,
        "wall_seconds": wall,
    }


def _run_one(args):
    seed, ident, index, tol, timing = args
    case = sample_case(seed, ident, index, tol)
    return CaseRecord.from_report(evaluate_identity(case, timing=timing))


def run_suite(config, cases=None):
    """Run every selected suite and return a SuiteReport.

    Cases are sampled from ``default_domain`` with a generator keyed by
    (seed, suite, index), so any suite can be re-run alone without shifting
    the others.  ``cases`` may supply explicit IdentityCase objects instead.
    Results are assembled in (suite, index) order whatever the worker count.
    """
    t0 = time.perf_counter()
    if cases is not None:
        records = [CaseRecord.from_report(evaluate_identity(c, timing=config.timing))
                   for c in cases]
    else:
        jobs = [(config.seed, ident, i, config.tol, config.timing)
                for ident in config.suites for i in range(config.cases_per_suite)]
        nw = config.workers()
        if nw <= 1:
            records = [_run_one(j) for j in jobs]
        else:
            with ProcessPoolExecutor(max_workers=nw) as pool:
                records = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (8 * nw))))
    wall = time.perf_counter() - t0 if config.timing else None
    return SuiteReport(config.echo(), config.digest(), _version(),
                       _summarize(records, config, wall), records)


def exit_code(report):
    """0 when every suite passes; 3 when a suite exceeds the non-convergence
    quota; 1 when a suite falls below its pass threshold."""
    suites = report.summary["suites"]
    if any(s["non_converged"] > NONCONVERGED_QUOTA * s["cases"] for s in suites.values()):
        return EXIT_NUMERICAL
    if all(s["suite_pass"] for s in suites.values()):
        return EXIT_OK
    return EXIT_BELOW_THRESHOLD


def _num(x):
    """JSON-safe float: non-finite values become strings."""
    if x is None:
        return None
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _unnum(x):
    return None if x is None else float(x)


def _case_dict(c):
    return {
        "id": c.id,
        "params": c.params,
        "lhs": {"re": _num(c.lhs.real), "im": _num(c.lhs.imag)},
        "rhs": {"re": _num(c.rhs.real), "im": _num(c.rhs.imag)},
        "rel_error": _num(c.rel_error),
        "imag_leak": _num(c.imag_leak),
        "pass": c.passed,
        "evaluations": c.evaluations,
        "millis": _num(c.millis),
        "converged": c.converged,
        "note": c.note,
    }


def report_to_json(report):
    summary = dict(report.summary)
    summary["suites"] = {k: {**v, "worst_rel_error": _num(v["worst_rel_error"])}
                         for k, v in summary["suites"].items()}
    doc = {
        "config": report.config,
        "config_hash": report.config_hash,
        "version": report.version,
        "summary": summary,
        "cases": [_case_dict(c) for c in report.cases],
    }
    return json.dumps(doc, indent=1) + "\n"


def report_from_json(text):
    doc = json.loads(text)
    cases = []
    for d in doc["cases"]:
        cases.append(CaseRecord(
            d["id"], d["params"],
            complex(_unnum(d["lhs"]["re"]), _unnum(d["lhs"]["im"])),
            complex(_unnum(d["rhs"]["re"]), _unnum(d["rhs"]["im"])),
            _unnum(d["rel_error"]), _unnum(d["imag_leak"]), d["pass"],
            d["evaluations"], _unnum(d["millis"]), d["converged"], d["note"]))
    summary = doc["summary"]
    summary["suites"] = {k: {**v, "worst_rel_error": _unnum(v["worst_rel_error"])}
                         for k, v in summary["suites"].items()}
    return SuiteReport(doc["config"], doc["config_hash"], doc["version"], summary, cases)


def report_to_csv(report):
    """One RFC-4180 row per case; params are a JSON object in one cell."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for c in report.cases:
        d = _case_dict(c)
        w.writerow([d["id"], json.dumps(d["params"], sort_keys=False),
                    repr(c.lhs.real), repr(c.lhs.imag), repr(c.rhs.real), repr(c.rhs.imag),
                    repr(c.rel_error), repr(c.imag_leak), "true" if c.passed else "false",
                    c.evaluations, "" if c.millis is None else repr(c.millis),
                    "true" if c.converged else "false", c.note])
    return buf.getvalue()


def records_from_csv(text):
    """Parse rows written by ``report_to_csv`` back into CaseRecords."""
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for r in rows:
        out.append(CaseRecord(
            r["id"], json.loads(r["params"]),
            complex(float(r["lhs_re"]), float(r["lhs_im"])),
            complex(float(r["rhs_re"]), float(r["rhs_im"])),
            float(r["rel_error"]), float(r["imag_leak"]), r["pass"] == "true",
            int(r["evaluations"]), float(r["millis"]) if r["millis"] else None,
            r["converged"] == "true", r["note"]))
    return out


def case_from_params(ident, params, tol=1e-7):
    """Build a case from explicit parameters (used for forced points)."""
    ident = IdentityId(str(ident))
    missing = set(PARAM_NAMES[ident]) - set(params)
    if missing:
        raise ConfigError(f"$.{ident}", f"missing parameters {sorted(missing)}")
    return IdentityCase(ident, params, tol=tol, tags=near_singular_tags(ident, params))
