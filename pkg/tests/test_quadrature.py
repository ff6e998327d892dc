import math

import mpmath as mp
import numpy as np
import pytest

from legendre_integrals import kernel
from legendre_integrals.errors import DomainError, IntegrandError
from legendre_integrals.legendre import legendre_q_real
from legendre_integrals.quadrature import (BesselOscillator, CosineOscillator, SingularitySpec,
                                           integrate_finite, integrate_semi_decaying,
                                           integrate_semi_oscillatory)

mp.mp.dps = 40


# finite interval

def test_finite_examples():
    r = integrate_finite(lambda x: x, 0.0, 1.0, tol=1e-12)
    assert r.converged and r.value == pytest.approx(0.5, rel=1e-15)
    r = integrate_finite(np.sin, 0.0, math.pi, tol=1e-12)
    assert r.converged and r.value == pytest.approx(2.0, rel=1e-14)
    r = integrate_finite(lambda x: -np.log(x), 0.0, 1.0, tol=1e-12, sing=SingularitySpec.log(0.0))
    assert r.converged and r.value == pytest.approx(1.0, rel=1e-12)


def test_interior_log_singularity():
    # int_0^2 ln|x - 0.7| dx
    ref = 1.3 * math.log(1.3) - 1.3 + 0.7 * math.log(0.7) - 0.7
    r = integrate_finite(lambda x: np.log(np.abs(x - 0.7)), 0.0, 2.0, tol=1e-11,
                         sing=SingularitySpec.log(0.7))
    assert r.converged and r.value == pytest.approx(ref, rel=1e-11)


def test_algebraic_endpoint():
    r = integrate_finite(lambda x: x ** -0.75, 0.0, 1.0, tol=1e-10, sing=SingularitySpec.algebraic(0.0, -0.75))
    assert r.converged and r.value == pytest.approx(4.0, rel=1e-10)


def test_complex_integrand():
    r = integrate_finite(lambda x: np.exp(1j * x), 0.0, math.pi, tol=1e-12)
    assert r.value == pytest.approx(2j, abs=1e-13)


def test_converged_result_within_tolerance():
    for tol in (1e-6, 1e-9, 1e-12):
        r = integrate_finite(lambda x: 1 / (1 + 25 * x * x), -1.0, 1.0, tol=tol)
        assert r.converged
        assert r.abs_error_estimate <= tol * max(1.0, abs(r.value))
        assert abs(r.value - 0.4 * math.atan(5)) <= tol * abs(r.value)


def test_nan_reports_location():
    def f(x):
        return np.where(np.abs(x - 0.3) < 0.05, np.nan, x)
    with pytest.raises(IntegrandError) as info:
        integrate_finite(f, 0.0, 1.0)
    assert abs(info.value.location - 0.3) < 0.05


def test_subdivision_limit_gives_not_converged():
    r = integrate_finite(lambda x: np.sin(1 / x), 1e-6, 1.0, tol=1e-13, max_intervals=20)
    assert not r.converged
    assert np.isfinite(r.value)


def test_finite_domain_errors():
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 0.0, 1.0, tol=0.0)
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 0.0, 1.0, sing=SingularitySpec.log(2.0))
    with pytest.raises(ValueError):
        SingularitySpec((0.0,), (-1.5,))


# honesty corpus: polynomial times weight on [0, 1], exact values

WEIGHTS = ("one", "power", "log", "exp")


def _corpus(n=200, seed=11):
    rng = np.random.default_rng(seed)
    cases = []
    for i in range(n):
        kind = WEIGHTS[i % 4]
        deg = int(rng.integers(0, 9))
        c = rng.normal(size=deg + 1)
        k = np.arange(deg + 1)
        if kind == "one":
            f = lambda x, c=c: np.polynomial.polynomial.polyval(x, c)
            truth, sing = float(np.sum(c / (k + 1))), None
        elif kind == "power":
            al = float(rng.uniform(-0.9, 2.5))
            f = lambda x, c=c, al=al: np.polynomial.polynomial.polyval(x, c) * x ** al
            truth, sing = float(np.sum(c / (k + al + 1))), SingularitySpec.algebraic(0.0, al)
        elif kind == "log":
            f = lambda x, c=c: -np.polynomial.polynomial.polyval(x, c) * np.log(x)
            truth, sing = float(np.sum(c / (k + 1) ** 2)), SingularitySpec.log(0.0)
        else:
            s = float(rng.uniform(0.5, 40))
            f = lambda x, c=c, s=s: np.polynomial.polynomial.polyval(x, c) * np.exp(-s * x)
            truth = float(sum(mp.mpf(cj) * mp.gammainc(j + 1, 0, s) / mp.mpf(s) ** (j + 1)
                              for j, cj in enumerate(c)))
            sing = None
        cases.append((f, truth, sing))
    return cases


CORPUS = _corpus()


def test_error_estimate_honesty():
    honest = 0
    for f, truth, sing in CORPUS:
        r = integrate_finite(f, 0.0, 1.0, tol=1e-8, sing=sing)
        honest += abs(r.value - truth) <= 3 * r.abs_error_estimate
    assert honest >= 0.99 * len(CORPUS)


def test_tolerance_monotonicity():
    for f, truth, sing in CORPUS:
        loose = integrate_finite(f, 0.0, 1.0, tol=1e-5, sing=sing)
        tight = integrate_finite(f, 0.0, 1.0, tol=1e-10, sing=sing)
        assert abs(tight.value - truth) <= abs(loose.value - truth) + loose.abs_error_estimate


# semi-infinite

def test_semi_decaying_examples():
    r = integrate_semi_decaying(lambda x: np.exp(-x), 1.0, tol=1e-12)
    assert r.converged and r.value == pytest.approx(1.0, rel=1e-12)
    r = integrate_semi_decaying(lambda x: x * np.exp(-x), 1.0, tol=1e-12)
    assert r.converged and r.value == pytest.approx(1.0, rel=1e-12)


def test_semi_decaying_bessel_square():
    r = integrate_semi_decaying(lambda k: np.exp(-k) * kernel.bessel_j(0, k) ** 2, 1.0, tol=1e-12)
    ref = float(mp.legenq(-0.5, 0, 1.5, type=3).real / mp.pi)
    assert ref == pytest.approx(0.642637681773124473, rel=1e-15)
    assert r.value == pytest.approx(ref, rel=1e-11)
    # and the library Q agrees with the oracle
    assert legendre_q_real(-0.5, 0, 1.5) / math.pi == pytest.approx(ref, rel=1e-13)


def test_semi_decaying_bad_scale():
    with pytest.raises(DomainError):
        integrate_semi_decaying(lambda x: np.exp(-x), 0.0)


def test_semi_oscillatory_examples():
    r = integrate_semi_oscillatory(lambda x: kernel.bessel_j(0, x), BesselOscillator(0.0, 1.0), tol=1e-10)
    assert r.converged and r.value == pytest.approx(1.0, rel=1e-9)
    r = integrate_semi_oscillatory(lambda x: np.cos(x) * np.exp(-x), CosineOscillator(1.0), tol=1e-10)
    assert r.value == pytest.approx(0.5, rel=1e-9)
    ref = float(mp.quadosc(lambda x: mp.besselj(0.5, x) / mp.sqrt(x), [0, mp.inf], period=2 * mp.pi))
    assert ref == pytest.approx(math.sqrt(math.pi / 2), rel=1e-15)
    r = integrate_semi_oscillatory(lambda x: kernel.bessel_j(0.5, x) / np.sqrt(x), BesselOscillator(0.5, 1.0),
                                   tol=1e-10, sing=SingularitySpec.algebraic(0.0, 0.0))
    assert r.converged and r.value == pytest.approx(ref, rel=1e-9)


def test_semi_oscillatory_scaled_kernel():
    # int_0^inf J_1(b x) dx = 1 / b
    r = integrate_semi_oscillatory(lambda x: kernel.bessel_j(1.0, 2.5 * x), BesselOscillator(1.0, 2.5), tol=1e-10)
    assert r.value == pytest.approx(0.4, rel=1e-9)


def test_semi_oscillatory_bad_mode():
    with pytest.raises(ValueError):
        integrate_semi_oscillatory(np.cos, CosineOscillator(1.0), mode="levin")


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.7, 6.0])
@pytest.mark.parametrize("scale", [0.3, 1.0, 4.0])
def test_lobe_partition_one_sign_change(nu, scale):
    osc = BesselOscillator(nu, scale)
    z = osc.zeros(0.0, 25)
    assert np.all(np.diff(z) > 0)
    for lo, hi in zip(z[:-1], z[1:]):
        xs = np.linspace(lo, hi, 201)[1:-1]
        s = np.sign(kernel.bessel_j(nu, scale * xs))
        assert np.all(s == s[0])
    # each bracket interior sits between two sign changes: neighbours differ
    mids = 0.5 * (z[:-1] + z[1:])
    s = np.sign(kernel.bessel_j(nu, scale * mids))
    assert np.all(s[1:] == -s[:-1])


def test_cosine_zeros():
    z = CosineOscillator(2.0).zeros(1.0, 4)
    np.testing.assert_allclose(np.cos(2.0 * z), 0.0, atol=1e-15)
    assert z[0] >= 1.0 and z[0] - math.pi / 2 < 1.0
