import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from legendre_integrals import kernel
from legendre_integrals.errors import ConvergenceError, DomainError, PoleError

mp.mp.dps = 40


def rel(a, b):
    return abs(a - b) / abs(b)


# gamma_ratio

def test_gamma_ratio_examples():
    assert kernel.gamma_ratio(5, 3) == pytest.approx(12, rel=1e-14)
    assert kernel.gamma_ratio(2.7, 2.7) == 1.0
    assert kernel.gamma_ratio(3.5, 0.5) == pytest.approx(1.875, rel=1e-14)


@pytest.mark.parametrize("a,b", [(0, 2), (-2, 1), (1.5, -3)])
def test_gamma_ratio_poles(a, b):
    with pytest.raises(PoleError):
        kernel.gamma_ratio(a, b)


@pytest.mark.parametrize("a,b", [(500, 499.5), (300.25, 180.5), (-3.5, 2.2), (0.1, 160.5), (450.0, 460.5)])
def test_gamma_ratio_large_against_mpmath(a, b):
    ref = mp.gamma(a) / mp.gamma(b)
    assert rel(kernel.gamma_ratio(a, b), float(ref)) <= 1e-13


@given(st.floats(0.05, 400))
def test_gamma_ratio_shift(a):
    assert kernel.gamma_ratio(a + 1, a) == pytest.approx(a, rel=1e-14)


# Bessel functions

def test_bessel_j_examples():
    assert kernel.bessel_j(0, 0) == 1.0
    assert kernel.bessel_j(0, 1) == pytest.approx(0.76519768655796655145, rel=1e-14)
    assert abs(kernel.bessel_j(0.5, math.pi)) < 1e-15


def test_bessel_j_domain():
    with pytest.raises(DomainError):
        kernel.bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        kernel.bessel_j(-0.7, 1.0)


@pytest.mark.parametrize("nu", [-0.5, -0.3, 0, 0.5, 2.25, 10, 50])
@pytest.mark.parametrize("x", [1e-3, 0.7, 12.0, 75.5, 999.0])
def test_bessel_j_against_mpmath(nu, x):
    ref = float(mp.besselj(nu, x))
    v = kernel.bessel_j(nu, x)
    # near a zero only absolute accuracy is meaningful
    assert abs(v - ref) <= 1e-12 * max(abs(ref), 1e-3 * float(mp.sqrt(2 / (mp.pi * x))))


@settings(max_examples=60)
@given(st.floats(0.5, 20), st.floats(0.1, 100))
def test_bessel_j_recurrence(nu, x):
    lhs = kernel.bessel_j(nu - 1, x) + kernel.bessel_j(nu + 1, x)
    rhs = 2 * nu / x * kernel.bessel_j(nu, x)
    scale = abs(kernel.bessel_j(nu - 1, x)) + abs(kernel.bessel_j(nu + 1, x))
    assert abs(lhs - rhs) <= 1e-10 * max(abs(rhs), scale)


def test_bessel_ik_examples():
    assert kernel.bessel_i(0, 0) == 1.0
    v = kernel.bessel_i(0, 1) * kernel.bessel_k(0, 2)
    assert v == pytest.approx(0.14419714597321359223, rel=1e-13)
    with pytest.raises(DomainError):
        kernel.bessel_k(0, 0.0)
    with pytest.raises(OverflowError):
        kernel.bessel_i(1, 800.0)


@settings(max_examples=60)
@given(st.floats(-3, 30), st.floats(1e-3, 700))
def test_bessel_k_positive(nu, x):
    assert kernel.bessel_k(nu, x) > 0


@settings(max_examples=60)
@given(st.floats(0, 20), st.floats(0.05, 600))
def test_ik_wronskian(nu, x):
    # the products stay finite through the fused path
    w = (kernel.bessel_ik_product(nu, x, x) * kernel.bessel_k(nu + 1, x) / kernel.bessel_k(nu, x)
         + kernel.bessel_ik_product(nu + 1, x, x) * kernel.bessel_k(nu, x) / kernel.bessel_k(nu + 1, x))
    assert w == pytest.approx(1 / x, rel=1e-10)


@pytest.mark.parametrize("nu,xs,xl", [(0, 1.0, 2.0), (2.5, 3.0, 3.0), (6, 650.0, 700.0), (0.3, 1e-3, 40.0)])
def test_ik_product_against_mpmath(nu, xs, xl):
    ref = float(mp.besseli(nu, xs) * mp.besselk(nu, xl))
    assert rel(kernel.bessel_ik_product(nu, xs, xl), ref) <= 1e-12


def test_bessel_j_zeros_bracket_sign_changes():
    z = kernel.bessel_j_zeros(1.5, 0.0, 12)
    for lo, hi in zip(z[:-1], z[1:]):
        xs = np.linspace(lo, hi, 401)[1:-1]
        s = np.sign(kernel.bessel_j(1.5, xs))
        assert np.all(s == s[0])
    assert np.all(np.abs(kernel.bessel_j(1.5, np.asarray(z))) < 1e-13)


# hypergeometric

def test_gauss_2f1_examples():
    assert kernel.gauss_2f1(0.3, 1.7, 2.2, 0.0) == 1.0
    assert kernel.gauss_2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-14)
    assert kernel.gauss_2f1(-2, 3, 1, 0.25) == pytest.approx(-0.125, rel=1e-15)


def test_gauss_2f1_errors():
    with pytest.raises(ConvergenceError):
        kernel.gauss_2f1(1, 1, 2, 1.5)
    with pytest.raises(PoleError):
        kernel.gauss_2f1(1, 1, 0, 0.2)


@given(st.integers(0, 12), st.floats(-5, 5))
def test_gauss_2f1_terminating_polynomial(n, z):
    # 2F1(-n, n+1; 1; (1-x)/2) is the Legendre polynomial
    x = 1 - 2 * z
    ref = np.polynomial.legendre.legval(x, [0] * n + [1])
    assert kernel.gauss_2f1(-n, n + 1, 1, z) == pytest.approx(ref, rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("n,z", [(12, 0.75), (30, -2.5), (7, 0.3)])
def test_gauss_2f1_terminating_exact(n, z):
    # the finite sum is evaluated exactly, so it rounds like the oracle
    ref = float(mp.hyp2f1(-n, n + 1, 1, z))
    assert kernel.gauss_2f1(-n, n + 1, 1, z) == ref


@pytest.mark.parametrize("a,b,c,z", [(0.5, 0.5, 1, 0.9), (1.3, -0.7, 2.9, 0.8),
                                     (2.0, 3.0, 5.5, 0.99), (0.25, 0.75, 1.5, 0.999999)])
def test_hyp2f1_real_against_mpmath(a, b, c, z):
    ref = float(mp.hyp2f1(a, b, c, z))
    assert rel(kernel.hyp2f1_real(a, b, c, z), ref) <= 1e-12


@pytest.mark.parametrize("a,b,c", [(0.5, 1.0, 1.5), (1.25, 1.75, 3.0), (0.75, 1.25, 1.0), (2.0, 2.5, 4.5)])
def test_hyp2f1_real_complement_near_one(a, b, c):
    # the exact complement u = 1 - w keeps full accuracy when w rounds to 1
    u = 1e-14
    ref = float(mp.hyp2f1(a, b, c, 1 - mp.mpf(u)))
    assert rel(kernel.hyp2f1_real(a, b, c, 1 - u, u), ref) <= 1e-11


@pytest.mark.parametrize("kp", [1e-12, 0.01, 0.5, 0.999, 1.0])
def test_ellipk_agm(kp):
    K, E, KmE = kernel.ellipk_agm(kp)
    m = 1 - mp.mpf(kp) ** 2
    assert rel(K, float(mp.ellipk(m))) <= 1e-13
    assert rel(E, float(mp.ellipe(m))) <= 1e-13
    ref = mp.ellipk(m) - mp.ellipe(m)
    if ref:
        assert rel(KmE, float(ref)) <= 1e-12
