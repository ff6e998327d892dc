"""Gamma ratios, real-order Bessel functions, Gauss 2F1 and complete elliptic
integrals.

Bessel functions delegate to the AMOS routines wrapped by ``scipy.special``;
everything else is evaluated here.  All functions are pure and accept numpy
arrays where it makes sense.
"""

from fractions import Fraction
import math

import numpy as np
from scipy import special as sp

from .errors import ConvergenceError, DomainError, PoleError

EPS = np.finfo(float).eps

# Stirling coefficients B_{2k} / (2k (2k-1))
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188,
             -691 / 360360, 1 / 156, -3617 / 122400)


def _is_nonpositive_int(x):
    return x <= 0 and x == math.floor(x)


def _stirling_tail(x):
    x2 = 1 / (x * x)
    s = 0
    p = 1 / x
    for c in _STIRLING:
        s += c * p
        p *= x2
    return s


def gamma_ratio(a, b):
    """Return Gamma(a) / Gamma(b) without intermediate overflow.

    Small arguments use the gamma function directly.  Otherwise both arguments
    are shifted above 20 and the log of the ratio is formed from a Stirling
    difference in extended precision, which keeps the relative error near
    machine epsilon even when the ratio itself is close to the overflow limit.
    """
    a = float(a)
    b = float(b)
    if _is_nonpositive_int(a) or _is_nonpositive_int(b):
        raise PoleError(f"gamma pole at a={a!r} or b={b!r}")
    if a == b:
        return 1.0
    if a < 170 and b < 170:
        return float(sp.gamma(a) / sp.gamma(b))
    pre = 1.0
    while a < 20:
        pre /= a
        a += 1
    while b < 20:
        pre *= b
        b += 1
    la = np.longdouble(a)
    lb = np.longdouble(b)
    d = la - lb
    lr = (d * np.log(lb) + (la - 0.5) * np.log1p(d / lb) - d
          + _stirling_tail(la) - _stirling_tail(lb))
    with np.errstate(over="ignore", under="ignore"):
        return float(pre * np.exp(lr))


def _check_x(x, strict):
    x = np.asarray(x, dtype=float)
    bad = (x <= 0) if strict else (x < 0)
    if np.any(bad):
        raise DomainError("Bessel argument must be positive")
    return x


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x) for real order nu >= -1/2."""
    if nu < -0.5:
        raise DomainError(f"order {nu} < -1/2")
    x = _check_x(x, strict=False)
    if nu < 0 and np.any(x == 0):
        raise DomainError("J_nu(0) is infinite for negative order")
    return _out(sp.jv(nu, x))


def bessel_j_zeros(nu, x_start, count):
    """Return the first ``count`` zeros of J_nu that exceed ``x_start``.

    Sign changes are located on a grid of spacing pi/6, which is below the
    smallest zero gap for nu >= -1/2, then polished with Brent's method.
    """
    from scipy.optimize import brentq

    f = lambda t: sp.jv(nu, t)
    zeros = []
    step = math.pi / 6
    lo = max(x_start, 1e-12)
    flo = f(lo)
    while len(zeros) < count:
        grid = lo + step * np.arange(1, 4 * count + 8)
        vals = f(grid)
        prev_x, prev_f = lo, flo
        for gx, gf in zip(grid, vals):
            if prev_f == 0.0 and prev_x > x_start:
                zeros.append(prev_x)
            elif prev_f * gf < 0:
                zeros.append(brentq(f, prev_x, gx, xtol=1e-15, rtol=4 * EPS))
            if len(zeros) == count:
                break
            prev_x, prev_f = gx, gf
        lo, flo = prev_x, prev_f
    return np.array(zeros)


def bessel_i(nu, x):
    """Modified Bessel function I_nu(x); raises OverflowError past ~700."""
    x = _check_x(x, strict=False)
    with np.errstate(over="ignore"):
        v = sp.iv(nu, x)
    if np.any(np.isinf(v)):
        raise OverflowError("I_nu(x) exceeds the double range; use bessel_ik_product")
    return _out(v)


def _k_order(nu):
    # K is even in nu and flat at 0; scipy returns nan for subnormal orders
    return 0.0 if abs(nu) < 1e-150 else nu


def bessel_k(nu, x):
    """Modified Bessel function of the second kind K_nu(x), x > 0."""
    x = _check_x(x, strict=True)
    # kv underflows early; the scaled form keeps values down to the double limit
    with np.errstate(under="ignore"):
        return _out(sp.kve(_k_order(nu), x) * np.exp(-x))


def bessel_ik_product(nu, x_small, x_large):
    """Fused I_nu(x_small) * K_nu(x_large) that never overflows.

    The exponentially scaled forms carry exp(x_small - x_large) separately.
    """
    xs = _check_x(x_small, strict=False)
    xl = _check_x(x_large, strict=True)
    return _out(sp.ive(nu, xs) * sp.kve(_k_order(nu), xl) * np.exp(xs - xl))


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


def _terminating_degree(a, b):
    """Degree of the polynomial when a or b is a non-positive integer."""
    degs = [int(-p.real) for p in (a, b)
            if np.isreal(p) and _is_nonpositive_int(float(np.real(p)))]
    return min(degs) if degs else None


def _hyp_series(a, b, c, z, maxterms=100000):
    """Plain power series; caller guarantees convergence."""
    z = np.asarray(z)
    term = np.ones_like(z, dtype=np.result_type(z, a, b, c, float))
    total = term.copy()
    for n in range(maxterms):
        cn = c + n
        if cn == 0:
            raise PoleError("c is a non-positive integer")
        ratio = (a + n) * (b + n) / (cn * (n + 1)) * z
        term = term * ratio
        total = total + term
        if n > 2:
            r = np.abs(ratio)
            tail = np.abs(term) * np.where(r < 1, r / np.maximum(1 - r, 1e-300), np.inf)
            if np.all(tail <= 0.25 * EPS * np.abs(total)) or np.all(term == 0):
                return total
    raise ConvergenceError("hypergeometric series did not converge")


def _poly_2f1_exact(a, b, c, z, deg):
    """Terminating sum in rational arithmetic, rounded once at the end."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    out = np.empty(z.shape, dtype=float)
    for idx, zi in np.ndenumerate(z):
        zf = Fraction(float(zi))
        term = Fraction(1)
        total = Fraction(1)
        for n in range(deg):
            term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * zf
            total += term
        out[idx] = float(total)
    return out


def _poly_2f1(a, b, c, z, deg):
    z = np.asarray(z)
    if deg <= 400 and np.isrealobj(z) and all(np.isrealobj(p) for p in (a, b, c)):
        return _poly_2f1_exact(a, b, c, z, deg)
    term = np.ones_like(z, dtype=np.result_type(z, a, b, c, float))
    total = term.copy()
    for n in range(deg):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * z
        total = total + term
    return total


def _rgamma(x):
    return sp.rgamma(x)


def _two_term(a, b, c, w, u=None):
    """Connection to 1 - w for non-integer c - a - b."""
    d = c - a - b
    u = 1 - w if u is None else u
    g1 = sp.gamma(c) * sp.gamma(d) * _rgamma(c - a) * _rgamma(c - b)
    g2 = sp.gamma(c) * sp.gamma(-d) * _rgamma(a) * _rgamma(b)
    out = 0.0
    if g1 != 0:
        out = out + g1 * _hyp_series(a, b, 1 - d, u)
    if g2 != 0:
        out = out + g2 * u ** d * _hyp_series(c - a, c - b, 1 + d, u)
    return out


def _log_case(a, b, c, w, m, u=None):
    """Connection to 1 - w when c - a - b = m is an integer (log case)."""
    u = np.asarray(1 - w if u is None else u, dtype=float)
    lu = np.log(u)
    eps = 0.25 * EPS
    if m >= 0:
        # c = a + b + m
        head = 0.0
        if m > 0:
            coef = sp.gamma(m) * sp.gamma(c) * _rgamma(a + m) * _rgamma(b + m)
            t = np.ones_like(u)
            s = np.ones_like(u)
            for n in range(m - 1):
                t = t * (a + n) * (b + n) / ((n + 1) * (1 - m + n)) * u
                s = s + t
            head = coef * s
        pref = (-1) ** m * sp.gamma(c) * _rgamma(a) * _rgamma(b)
        if pref == 0:
            return head
        t = np.full_like(u, 1 / math.factorial(m)) * u ** m
        total = np.zeros_like(u)
        for n in range(100000):
            bracket = (lu - sp.digamma(n + 1) - sp.digamma(n + m + 1)
                       + sp.digamma(a + n + m) + sp.digamma(b + n + m))
            inc = t * bracket
            total = total + inc
            t = t * (a + m + n) * (b + m + n) / ((n + 1) * (n + m + 1)) * u
            if n > 2 and np.all(np.abs(inc) <= eps * np.abs(total)) and np.all(np.abs(u) < 0.99):
                break
        else:
            raise ConvergenceError("log-case series did not converge")
        return head - pref * total
    m = -m
    # c = a + b - m
    coef = sp.gamma(m) * sp.gamma(c) * _rgamma(a) * _rgamma(b)
    t = np.ones_like(u)
    s = np.ones_like(u)
    for n in range(m - 1):
        t = t * (a - m + n) * (b - m + n) / ((n + 1) * (1 - m + n)) * u
        s = s + t
    head = coef * u ** (-m) * s
    pref = (-1) ** m * sp.gamma(c) * _rgamma(a - m) * _rgamma(b - m)
    if pref == 0:
        return head
    t = np.full_like(u, 1 / math.factorial(m))
    total = np.zeros_like(u)
    for n in range(100000):
        bracket = (lu - sp.digamma(n + 1) - sp.digamma(n + m + 1)
                   + sp.digamma(a + n) + sp.digamma(b + n))
        inc = t * bracket
        total = total + inc
        t = t * (a + n) * (b + n) / ((n + 1) * (n + m + 1)) * u
        if n > 2 and np.all(np.abs(inc) <= eps * np.abs(total)):
            break
    else:
        raise ConvergenceError("log-case series did not converge")
    return head - pref * total


# A near-integer c - a - b is handled by interpolating in the parameter a
# across the integer.  F is entire in a, so Chebyshev interpolation on a
# window that keeps every node away from the integer converges fast while the
# cancellation in the connection formula stays mild at each node.  The window
# shrinks like 1/|log(1 - w)| because the u**d factor varies on that scale.
_PERTURB_WINDOW = 0.1
_PERTURB_NODES = np.cos(np.pi * (np.arange(20) + 0.5) / 20)


def _near_integer(a, b, c, w, n, eps_d, u=None):
    """Interpolate across c - a - b = n + eps_d."""
    u = 1 - w if u is None else u
    lu = np.log(u)
    radius = min(0.4, 4.0 / max(float(np.max(np.abs(lu))), 1e-300))
    radius = max(radius, 1.5 * abs(eps_d))
    ts = radius * _PERTURB_NODES
    out = 0.0
    for i, ti in enumerate(ts):
        val = _two_term(a + eps_d - ti, b, c, w, u)
        if n < 0:
            # remove the dominant u**d(t) growth before interpolating
            val = val * np.exp(-(n + ti) * lu)
        li = 1.0
        for j, tj in enumerate(ts):
            if j != i:
                li *= (eps_d - tj) / (ti - tj)
        out = out + li * val
    if n < 0:
        out = out * np.exp((n + eps_d) * lu)
    return out


def _reflect(a, b, c, w, u=None):
    d = c - a - b
    n = round(d)
    if d == n:
        return _log_case(a, b, c, w, int(n), u)
    if abs(d - n) < _PERTURB_WINDOW:
        return _near_integer(a, b, c, w, n, d - n, u)
    return _two_term(a, b, c, w, u)


def hyp2f1_real(a, b, c, w, u=None):
    """2F1(a, b; c; w) for real parameters and real 0 <= w < 1 (array w).

    Small w uses the power series; w > 0.85 goes through the connection
    formula about w = 1, including the logarithmic integer cases.  ``u``
    optionally supplies 1 - w free of cancellation (it may then be that w
    rounds to 1).
    """
    w = np.asarray(w, dtype=float)
    if u is not None:
        u = np.broadcast_to(np.asarray(u, dtype=float), w.shape)
        if np.any((u <= 0) | (u > 1)):
            raise DomainError("hyp2f1_real needs 0 < 1 - w <= 1")
        w = np.minimum(w, np.nextafter(1.0, 0.0))
    elif np.any((w < 0) | (w >= 1)):
        raise DomainError("hyp2f1_real needs 0 <= w < 1")
    deg = _terminating_degree(a, b)
    if deg is not None:
        return _poly_2f1(a, b, c, w, deg)
    if _is_nonpositive_int(c):
        raise PoleError("c is a non-positive integer")
    out = np.empty_like(w)
    low = w <= 0.85
    if np.any(low):
        out[low] = _hyp_series(a, b, c, w[low])
    if np.any(~low):
        out[~low] = _reflect(a, b, c, w[~low], None if u is None else u[~low])
    return out


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z).

    Terminating cases (a or b a non-positive integer) are finite sums valid
    for any z.  Otherwise |z| < 1 is required; real arguments close to 1 are
    mapped through the connection formula about z = 1 and negative real
    arguments through the Pfaff transformation.

    Raises
    ------
    ConvergenceError
        If |z| >= 1 and the series does not terminate.
    PoleError
        If c is a non-positive integer that the series reaches.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z)
    deg = _terminating_degree(a, b)
    if deg is not None:
        c_real = float(np.real(c))
        if np.isreal(c) and _is_nonpositive_int(c_real) and -c_real < deg:
            raise PoleError("c hits a pole before the series terminates")
        res = _poly_2f1(a, b, c, z, deg)
        return res.item() if scalar else res
    if np.any(np.abs(z) >= 1):
        raise ConvergenceError("|z| >= 1 and the series does not terminate")
    if np.isreal(c) and _is_nonpositive_int(float(np.real(c))):
        raise PoleError("c is a non-positive integer")
    real_case = (np.isrealobj(z) and all(np.isrealobj(p) for p in (a, b, c)))
    if not real_case:
        res = _hyp_series(a, b, c, z)
    else:
        zf = z.astype(float)
        res = np.empty_like(zf)
        neg = zf < -0.5
        mid = ~neg
        if np.any(mid):
            pos = zf[mid]
            vals = np.empty_like(pos)
            nonneg = pos >= 0
            if np.any(nonneg):
                vals[nonneg] = hyp2f1_real(a, b, c, pos[nonneg])
            if np.any(~nonneg):
                vals[~nonneg] = _hyp_series(a, b, c, pos[~nonneg])
            res[mid] = vals
        if np.any(neg):
            zn = zf[neg]
            t = zn / (zn - 1)
            res[neg] = (1 - zn) ** (-a) * hyp2f1_real(a, c - b, c, t)
    return res.item() if scalar else res


# ---------------------------------------------------------------------------
# Complete elliptic integrals by the arithmetic-geometric mean


def ellipk_agm(kp):
    """Complete elliptic integrals from the complementary modulus k'.

    Returns ``(K, E, K - E)`` for modulus k = sqrt(1 - k'^2).  Taking k' as
    input keeps full accuracy near k -> 1, where K has its logarithmic
    singularity; K - E is accumulated directly so it stays accurate as k -> 0.
    """
    kp = np.asarray(kp, dtype=float)
    if np.any((kp <= 0) | (kp > 1)):
        raise DomainError("complementary modulus must lie in (0, 1]")
    a = np.ones_like(kp)
    g = kp.copy()
    # c_0^2 = k^2 = (1 - k')(1 + k')
    csum = 0.5 * (1 - kp) * (1 + kp)
    scale = 0.5
    for _ in range(60):
        c = 0.5 * (a - g)
        a, g = 0.5 * (a + g), np.sqrt(a * g)
        scale *= 2
        csum = csum + scale * c * c
        if np.all(np.abs(c) <= EPS * a):
            break
    K = np.pi / (2 * a)
    kme = K * csum
    return _out(K), _out(K - kme), _out(kme)
