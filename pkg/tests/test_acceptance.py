"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed together in the
pytest terminal summary (see conftest.py) and directly when this file is run
as a script.
"""

import io
import math
import time

import numpy as np
import pytest

from legendre_integrals.cli import main
from legendre_integrals.harness import (NONCONVERGED_QUOTA, case_from_params, config_from_mapping,
                                        run_suite, sample_case)
from legendre_integrals.identities import IdentityCase, IdentityId, evaluate_identity, whipple_consistency
from legendre_integrals.legendre import (asymptotic_legendre, ferrers_bounds, ferrers_p, legendre_p_real,
                                         legendre_pq_imag, legendre_q_real)

I = IdentityId
RESULTS = {}


def _record(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k:>2}: {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def _sweep(*suites, n=40, tol=1e-7):
    t0 = time.perf_counter()
    rep = run_suite(config_from_mapping({"suites": list(suites), "cases_per_suite": n, "tol": tol}))
    return rep, time.perf_counter() - t0


def _worst(cases):
    return max(c.rel_error for c in cases)


def test_criterion_01_watson_qj():
    rep, secs = _sweep("WATSON_QJ")
    errs = [c.rel_error for c in rep.cases]
    frac = sum(e <= 1e-7 for e in errs) / len(errs)
    ok = frac >= 0.95 and max(errs) <= 1e-5 and secs < 10
    assert _record(1, ok, f"QJ integral: {frac:.0%} at 1e-7, worst {max(errs):.1e}, {secs:.1f} s")


def test_criterion_02_hardy_and_q1_inverse():
    rep, _ = _sweep("HARDY_EXT", "HANKEL_Q1")
    worst = _worst(rep.cases)
    fd = 0.0
    for i in range(40):
        p = sample_case(0, I.WATSON_QJ, i).params
        fd = max(fd, whipple_consistency(p["a"], p["b"], p["c"], p["nu"]))
    ok = len(rep.cases) == 80 and worst <= 1e-6 and fd <= 1e-6
    assert _record(2, ok, f"Hardy + Q1 inverse worst {worst:.1e}; d/da consistency worst {fd:.1e}")


def test_criterion_03_cosine_pair():
    rep, _ = _sweep("COSINE_IK", "COSINE_EQUAL")
    ik = [c for c in rep.cases if c.id == "COSINE_IK"]
    equal = sum(c.params["a"] == c.params["b"] for c in ik)
    guard = all(c.params["b"] <= c.params["a"] for c in ik)
    worst = _worst(rep.cases)
    ok = worst <= 1e-7 and equal >= 5 and guard
    assert _record(3, ok, f"cosine pair worst {worst:.1e}; {equal} cases with a = b")


def test_criterion_04_parabolic_pair():
    rep, _ = _sweep("PARABOLIC_SRC", "PARABOLIC_INV")
    worst = _worst(rep.cases)
    guard = all(c.params["mu"] != c.params["mu2"] and c.params["m"] <= 6 for c in rep.cases)
    ok = worst <= 1e-6 and guard
    assert _record(4, ok, f"parabolic pair worst {worst:.1e}; mu != mu2 guard held: {guard}")


def _ortho_cases():
    fact = lambda n, m: math.exp(math.lgamma(n + m + 1) - math.lgamma(n - m + 1))
    out = []
    for n in range(9):
        for n2 in range(9):
            for m in range(min(n, n2) + 1):
                h = lambda k: 2 / (2 * k + 1) * fact(k, m)
                out.append((I.DEGREE_ORTHO, dict(n=n, n2=n2, m=m), n == n2, math.sqrt(h(n) * h(n2))))
    for n in range(1, 9):
        for m in range(1, n + 1):
            for m2 in range(1, n + 1):
                h = lambda k: fact(n, k) / k
                out.append((I.ORDER_ORTHO, dict(n=n, m=m, m2=m2), m == m2, math.sqrt(h(m) * h(m2))))
    for m in range(9):
        for n in range(9):
            h = lambda k: math.pi / (1 if k == 0 else 2)
            out.append((I.CHEB_ORTHO, dict(m=m, n=n), m == n, math.sqrt(h(m) * h(n))))
    return out


def test_criterion_05_orthogonality():
    # off-diagonal integrals are compared with the norm sqrt(h_n h_n') of
    # the two factors, since the raw integrals reach 16! in size
    diag = off = 0.0
    count = 0
    for ident, params, is_diag, scale in _ortho_cases():
        rep = evaluate_identity(IdentityCase(ident, params))
        if is_diag:
            diag = max(diag, abs(rep.lhs - rep.rhs) / abs(rep.rhs))
        else:
            off = max(off, abs(rep.lhs) / scale)
        count += 1
    ok = diag <= 1e-9 and off <= 1e-10
    assert _record(5, ok, f"{count} orthogonality integrals: diagonal {diag:.1e} rel, "
                          f"off-diagonal {off:.1e} of the norm")


def test_criterion_06_spherical_nu_and_corollary():
    rep, _ = _sweep("SPH_NU", "SPH_COR")
    nu = [c for c in rep.cases if c.id == "SPH_NU"]
    cor = [c for c in rep.cases if c.id == "SPH_COR"]
    worked = evaluate_identity(case_from_params(I.SPH_COR, dict(n=0, m=0, r=1.0, r2=2.0, theta2=math.pi / 2)))
    rhs_ok = abs(worked.rhs - math.pi * math.sqrt(2)) <= 1e-15 * math.pi * math.sqrt(2)
    leak = max(c.imag_leak for c in nu)
    ok = (_worst(cor) <= 1e-7 and worked.rel_error <= 1e-7 and rhs_ok
          and _worst(nu) <= 1e-7 and leak <= 1e-7)
    assert _record(6, ok, f"SPH_COR worst {_worst(cor):.1e} (worked point {worked.rel_error:.1e}); "
                          f"SPH_NU worst {_worst(nu):.1e}, imag leak {leak:.1e}")


NEAR_SINGULAR_PROLATE = [
    dict(n=0, m=0, sigma=0.5, sigma2=0.5, theta2=1.0),
    dict(n=3, m=1, sigma=1.2, sigma2=1.2, theta2=0.4),
    dict(n=5, m=2, sigma=2.0, sigma2=2.0, theta2=2.5),
    dict(n=8, m=8, sigma=0.3, sigma2=0.3, theta2=1.57),
]


def test_criterion_07_coordinate_theorems():
    rep, _ = _sweep("PROLATE", "OBLATE", "BISPHERE", "TOROIDAL")
    worst = {s: _worst([c for c in rep.cases if c.id == s]) for s in ("PROLATE", "OBLATE", "BISPHERE", "TOROIDAL")}
    designed = [evaluate_identity(case_from_params(I.PROLATE, p, tol=1e-5)) for p in NEAR_SINGULAR_PROLATE]
    tagged = all("singular-quadrature" in r.case.tags for r in designed)
    dworst = max(r.rel_error for r in designed)
    ok = max(worst.values()) <= 1e-7 and all(r.passed for r in designed) and tagged
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert _record(7, ok, f"{detail}; near-singular prolate worst {dworst:.1e}")


def test_criterion_08_geom_oracle():
    t0 = time.perf_counter()
    worst = {0: 0.0, 1: 0.0, 2: 0.0}
    counts = {0: 0, 1: 0, 2: 0}
    for k in range(50):
        for s in range(3):
            case = sample_case(0, I.GEOM_ORACLE, 3 * k + s, tol=1e-8)
            assert case.params["system"] == s
            r = evaluate_identity(case)
            worst[s] = max(worst[s], r.rel_error)
            counts[s] += 1
    secs = time.perf_counter() - t0
    ok = max(worst.values()) <= 1e-8 and min(counts.values()) == 50 and secs < 30
    assert _record(8, ok, f"double expansions: oblate {worst[0]:.1e}, bispherical {worst[1]:.1e}, "
                          f"toroidal {worst[2]:.1e} over 50 points each, {secs:.1f} s")


def _asymptotic_ratio(kind, nu, mu, xi):
    est = complex(asymptotic_legendre(kind, nu, mu, xi).value)
    if kind == "P-real":
        v = legendre_p_real(nu, mu, math.cosh(xi))
    elif kind == "Q-real":
        v = legendre_q_real(nu, mu, math.cosh(xi))
    else:
        P, Q = legendre_pq_imag(nu, mu, math.sinh(xi))
        v = P if kind == "P-imag" else Q
    return complex(v) / est


def test_criterion_09_asymptotic_ratios():
    bad = []
    worst = 0.0
    for kind in ("P-real", "Q-real", "P-imag", "Q-imag"):
        for nu in (20, 50, 100, 200):
            for mu in (0, 1, 2):
                for xi in (0.5, 1.0, 2.0):
                    dev = nu * abs(_asymptotic_ratio(kind, nu, mu, xi) - 1)
                    worst = max(worst, dev)
                    if dev > 5:
                        bad.append(f"{kind} nu={nu} mu={mu} xi={xi}: nu|ratio-1| = {dev:.2f}")
    detail = f"{144 - len(bad)}/144 points within 5/nu, worst nu|ratio-1| = {worst:.2f}"
    if bad:
        detail += "; over: " + "; ".join(bad)
    assert _record(9, not bad, detail)


def test_criterion_10_bound_compliance():
    th = np.linspace(0.0, math.pi, 4001)
    inner = (th > 0.05) & (th < math.pi - 0.05)
    violations = 0
    for n in range(61):
        for m in range(n + 1):
            P = np.abs(ferrers_p(n, m, np.cos(th)))
            bound_a, _ = ferrers_bounds(n, m, 0.3)
            violations += int(np.sum(P > bound_a))
            if n >= 1:
                # bound_b scales as csc(theta)**(m + 1/2) from its value at pi/2
                b = ferrers_bounds(n, m, math.pi / 2)[1] * np.sin(th[inner]) ** -(m + 0.5)
                violations += int(np.sum(P[inner] > b))
                t = th[inner][::97]
                assert np.allclose(b[::97], [ferrers_bounds(n, m, x)[1] for x in t], rtol=1e-13)
    assert _record(10, violations == 0, f"{violations} bound violations for n <= 60 on 4001 angles")


def test_criterion_11_hankel_round_trip():
    rep, _ = _sweep("HANKEL_ROUNDTRIP")
    cont = _worst(rep.cases)
    step = evaluate_identity(case_from_params(I.HANKEL_ROUNDTRIP, dict(nu=0.0, r=1.0, alpha=1.0, step=1)))
    step_err = abs(step.lhs - 0.5)
    ok = cont <= 1e-6 and step_err <= 1e-4
    assert _record(11, ok, f"continuous F worst {cont:.1e}; step midpoint error {step_err:.1e}")


def _verify_bytes(tmp_path, name, *extra):
    path = tmp_path / name
    rc = main(["verify", "--seed", "0", "--out", str(path), "--quiet", *extra],
              out=io.StringIO(), err=io.StringIO())
    return rc, path.read_bytes()


def test_criterion_12_determinism(tmp_path):
    t0 = time.perf_counter()
    rc1, a = _verify_bytes(tmp_path, "a.json")
    full = time.perf_counter() - t0
    rc2, b = _verify_bytes(tmp_path, "b.json")
    rc3, c = _verify_bytes(tmp_path, "c.json", "--jobs", "1")
    rc4, d = _verify_bytes(tmp_path, "d.json", "--jobs", "8")
    same = a == b and c == d and a == c
    ok = same and rc1 == rc2 == rc3 == rc4 == 0 and full < 300
    assert _record(12, ok, f"four default runs byte-identical: {same}; exit code {rc1}; "
                           f"full default suite {full:.1f} s")


def test_default_suite_all_pass():
    rep = run_suite(config_from_mapping({}))
    s = rep.summary["suites"]
    assert all(v["suite_pass"] for v in s.values())
    assert all(v["non_converged"] <= NONCONVERGED_QUOTA * v["cases"] for v in s.values())


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
