"""Legendre-family functions.

Conventions follow the DLMF: Ferrers functions on the cut carry the
(-1)**m factor; P and Q off the cut are the principal branches analytic in
C minus (-infinity, 1], with (z**2 - 1)**(mu/2) read as
(z - 1)**(mu/2) * (z + 1)**(mu/2).  Q carries exp(i pi mu), so the layer
returns complex values for Q and uses real arithmetic only where the value is
real by construction.

Integer-order families with integer or half-odd-integer degree go through
three-term recurrences: forward in degree for P (the dominant solution),
continued fractions in degree for Q (the minimal one), upward in order for Q
and Miller's backward scheme in order for P.  Half-integer seeds come from
complete elliptic integrals.  Everything else uses the hypergeometric
representation of Q in 1/z**2.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import kernel
from .errors import DomainError, PoleError

__all__ = [
    "ferrers_p", "ferrers_p_table", "ferrers_p_normalized_table", "legendre_poly",
    "pq_product_table", "chebyshev_t",
    "legendre_p_real", "legendre_q_real", "legendre_pq_imag",
    "legendre_p_table", "legendre_q_table", "ferrers_bounds",
    "asymptotic_legendre", "AsymptoticEstimate",
]


def _out(v):
    return v.item() if np.ndim(v) == 0 else v


def _family(nu):
    """Return the base degree (0 or -1/2) if nu is on a recurrence lattice."""
    if nu == math.floor(nu) and nu >= 0:
        return 0.0
    if nu - 0.5 == math.floor(nu - 0.5) and nu >= -0.5:
        return -0.5
    return None


def _is_int(x):
    return float(x) == math.floor(x)


# ---------------------------------------------------------------------------
# Polynomials and Ferrers functions


def legendre_poly(n, x):
    """Legendre polynomial P_n(x) by the Bonnet recurrence (any real x)."""
    x = np.asarray(x, dtype=float)
    p0 = np.ones_like(x)
    if n == 0:
        return _out(p0)
    p1 = x.copy()
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return _out(p1)


def chebyshev_t(n, x):
    """Chebyshev polynomial of the first kind T_n(x) by its recurrence."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    x = np.asarray(x, dtype=float)
    t0 = np.ones_like(x)
    if n == 0:
        return _out(t0)
    t1 = x.copy()
    for _ in range(1, n):
        t0, t1 = t1, 2 * x * t1 - t0
    return _out(t1)


def _double_factorial_odd(m):
    out = 1.0
    for k in range(1, 2 * m, 2):
        out *= k
    return out


def ferrers_p_table(nmax, m, x):
    """Ferrers P_n^m(x) for n = 0..nmax, stacked along the first axis.

    Rows with n < m are zero.  Seeds at n = m and m + 1 are closed forms and
    the rest follows the forward recurrence in degree.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise DomainError("Ferrers functions need |x| <= 1")
    out = np.zeros((nmax + 1,) + x.shape)
    if m > nmax:
        return out
    s = np.sqrt((1 - x) * (1 + x))
    pmm = (-1) ** m * _double_factorial_odd(m) * s ** m
    out[m] = pmm
    if m + 1 <= nmax:
        out[m + 1] = (2 * m + 1) * x * pmm
    for n in range(m + 1, nmax):
        out[n + 1] = ((2 * n + 1) * x * out[n] - (n + m) * out[n - 1]) / (n - m + 1)
    return out


def ferrers_p_normalized_table(nmax, m, x):
    """sqrt((n-m)!/(n+m)!) P_n^m(x) for n = 0..nmax (zero rows for n < m).

    The normalized recurrence keeps every entry bounded, so high orders do
    not overflow.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise DomainError("Ferrers functions need |x| <= 1")
    out = np.zeros((nmax + 1,) + x.shape)
    if m > nmax:
        return out
    s = np.sqrt((1 - x) * (1 + x))
    c = 1.0
    for k in range(1, m + 1):
        c *= math.sqrt((2 * k - 1) / (2 * k))
    out[m] = (-1) ** m * c * s ** m
    if m + 1 <= nmax:
        out[m + 1] = math.sqrt(2 * m + 1) * x * out[m]
    for n in range(m + 1, nmax):
        out[n + 1] = ((2 * n + 1) * x * out[n]
                      - math.sqrt((n + m) * (n - m)) * out[n - 1]) / math.sqrt((n + m + 1) * (n - m + 1))
    return out


def ferrers_p(n, m, x):
    """Ferrers function of the first kind P_n^m(x), -1 <= x <= 1.

    Raises
    ------
    DomainError
        If m > n, m < 0 or |x| > 1.
    """
    if m < 0 or n < 0:
        raise DomainError("degree and order must be non-negative")
    if m > n:
        raise DomainError(f"order {m} exceeds degree {n}")
    return _out(ferrers_p_table(n, m, x)[n])


def ferrers_bounds(n, m, theta):
    """Upper bounds on |P_n^m(cos theta)|.

    Returns ``(bound_a, bound_b)`` where ``bound_a = (m+n)!/n!`` holds on
    [0, pi] and ``bound_b = 2 (n+m)!/n! (pi n)**-1/2 csc(theta)**(m+1/2)``
    holds strictly inside; ``bound_b`` is None at the endpoints or for n = 0.
    """
    if not 0 <= m <= n:
        raise DomainError("need 0 <= m <= n")
    ratio = kernel.gamma_ratio(m + n + 1, n + 1)
    s = math.sin(theta)
    if n < 1 or theta <= 0 or theta >= math.pi or s <= 0:
        return ratio, None
    return ratio, 2 * ratio * (math.pi * n) ** -0.5 * s ** -(m + 0.5)


# ---------------------------------------------------------------------------
# Seeds off the cut


def _sqrt_pair(z, d=None):
    """(z - 1)**(1/2) (z + 1)**(1/2) with principal branches.

    ``d``, when given, is z - 1 computed without cancellation.
    """
    if d is not None:
        return np.sqrt(d * (z + 1))
    if np.iscomplexobj(z):
        return np.sqrt(z - 1) * np.sqrt(z + 1)
    return np.sqrt((z - 1) * (z + 1))


def _check_real_arg(z):
    z = np.asarray(z, dtype=float)
    if np.any(z <= 1):
        raise DomainError("argument must exceed 1")
    return z


def _resolve_near_one(z, zm1):
    """Return (z, z - 1) as arrays, trusting ``zm1`` when supplied."""
    if zm1 is None:
        z = _check_real_arg(z)
        return z, None
    d = np.asarray(zm1, dtype=float)
    if np.any(d <= 0):
        raise DomainError("z - 1 must be positive")
    return 1.0 + d, d


def _p_half_seeds(z):
    """P_{-1/2}, P_{1/2}, P^1_{-1/2}, P^1_{1/2} at real z > 1."""
    k = np.sqrt((z - 1) / (z + 1))
    kp = np.sqrt(2 / (z + 1))
    K, E, D = kernel.ellipk_agm(kp)
    K, E, D = np.asarray(K), np.asarray(E), np.asarray(D)
    p0 = 2 / np.pi * kp * K
    p1 = 2 / np.pi * (2 * E - kp * kp * K) / kp
    q0 = -D * kp / (np.pi * k)
    q1 = (k * k * (2 * K - D) - D) / (np.pi * k * kp)
    return p0, p1, q0, q1


def _q_seeds(nu0, z, d=None):
    """Q^0 and Q^1 at degrees nu0 and nu0 + 1 (only accurate near z = 1
    for the upper degree, where the forward recurrence is used)."""
    w = _sqrt_pair(z, d)
    if d is None and not np.iscomplexobj(z):
        d = z - 1
    if nu0 == 0:
        if np.iscomplexobj(z):
            q0 = 0.5 * (np.log(z + 1) - np.log(z - 1))
        else:
            q0 = 0.5 * np.log1p(2 / d)
        q1 = z * q0 - 1
        r0 = -1 / w
        r1 = w * q0 - z / w
        return q0, q1, r0, r1
    # half-integer family; real z only
    k = np.sqrt(2 / (z + 1))
    kp = np.sqrt(d / (z + 1))
    K, E, _ = kernel.ellipk_agm(kp)
    K, E = np.asarray(K), np.asarray(E)
    q0 = k * K
    q1 = z * k * K - 2 / k * E
    r0 = -E * k / (2 * kp)
    r1 = (kp * K - (2 - k * k) * E / (2 * kp)) / k
    return q0, q1, r0, r1


def _xi(z, w):
    """Growth rate ln|z + w| of the dominant solution."""
    return np.log(np.abs(z + w))


def _q_degree_chain(nu0, mu, count, z, q_lo, q_hi, rho=None, w=None):
    """Q^mu at degrees nu0 .. nu0 + count - 1 for mu in {0, 1}.

    Near z = 1 the forward recurrence loses at most a factor e**(2 N xi);
    elsewhere the ratios Q_nu / Q_{nu-1} come from the continued fraction
    (backward ratio recurrence) and are anchored at the lowest degree.
    With ``rho`` given, row j is multiplied by rho**(nu0 + j + 1/2).
    """
    if w is None:
        w = _sqrt_pair(z)
    xi = _xi(z, w)
    out = np.empty((count,) + z.shape, dtype=np.result_type(z, q_lo, complex if np.iscomplexobj(z) else float))
    out[0] = q_lo
    if count == 1:
        return out
    n_top = count - 1
    forward = xi * n_top <= 1.5
    if np.any(forward):
        f = np.empty((count,) + z.shape, dtype=out.dtype)
        f[0] = q_lo
        f[1] = q_hi
        for j in range(1, count - 1):
            nu = nu0 + j
            f[j + 1] = ((2 * nu + 1) * z * f[j] - (nu + mu) * f[j - 1]) / (nu - mu + 1)
        out[:, forward] = f[:, forward]
    back = ~forward
    if np.any(back):
        zb = z[back]
        xib = xi[back]
        extra = int(math.ceil(22.0 / max(float(np.min(xib)), 1e-3))) + 10
        top = n_top + min(extra, 200000)
        h = np.zeros(zb.shape, dtype=out.dtype)
        ratios = np.empty((count,) + zb.shape, dtype=out.dtype)
        for j in range(top, 0, -1):
            nu = nu0 + j
            h = (nu + mu) / ((2 * nu + 1) * zb - (nu - mu + 1) * h)
            if j < count:
                ratios[j] = h
        vals = np.empty((count,) + zb.shape, dtype=out.dtype)
        vals[0] = out[0][back]
        step = 1.0 if rho is None else rho[back]
        if rho is not None:
            vals[0] = vals[0] * rho[back] ** (nu0 + 0.5)
        for j in range(1, count):
            vals[j] = vals[j - 1] * ratios[j] * step
        out[:, back] = vals
    if rho is not None and np.any(forward):
        scale = rho[forward][None, :] ** (nu0 + 0.5 + np.arange(count))[:, None]
        out[:, forward] = out[:, forward] * scale
    return out


def _order_up_q(nu, m, q0, q1, z, w):
    """Upward order recurrence; stable for Q off the cut and for P far from 1."""
    if m == 0:
        return q0
    a, b = q0, q1
    for mu in range(0, m - 1):
        a, b = b, -2 * (mu + 1) * z / w * b + (nu - mu) * (nu + mu + 1) * a
    return b


def legendre_q_table(nu0, m, count, z, zm1=None):
    """Q^m_nu(z) for nu = nu0, nu0+1, ..., on real z > 1 or complex z.

    ``nu0`` must be a non-negative integer or a half-odd integer >= -1/2;
    the result has shape (count,) + z.shape.  For real arguments close to 1,
    pass ``zm1 = z - 1`` computed without cancellation; ``z`` is then ignored.
    """
    base = _family(nu0)
    if base is None or m < 0 or not _is_int(m):
        raise DomainError("table needs integer order and integer/half-integer degree")
    d = None
    if zm1 is not None:
        z, d = _resolve_near_one(None, zm1)
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        if d is None:
            z = _check_real_arg(z)
    elif base != 0:
        raise DomainError("complex arguments are supported for integer degree only")
    start = int(round(nu0 - base))
    n_total = start + count
    w = _sqrt_pair(z, d)
    q0, q1, r0, r1 = _q_seeds(base, z, d)
    c0 = _q_degree_chain(base, 0, n_total, z, q0, q1, w=w)
    c1 = _q_degree_chain(base, 1, n_total, z, r0, r1, w=w)
    rows = [_order_up_q(base + j, int(m), c0[j], c1[j], z, w) for j in range(start, n_total)]
    return np.stack(rows)


def _p_half_order(m, z):
    """P^m_{-1/2} and P^m_{1/2} by Miller's backward recurrence in order."""
    p0m, p0p, p1m, p1p = _p_half_seeds(z)
    if m == 0:
        return p0m, p0p
    if m == 1:
        return p1m, p1p
    w = _sqrt_pair(z)
    # far from z = 1 the two solutions separate slowly in order and the
    # upward recurrence loses little; near z = 1 Miller's scheme is needed
    up = z > 5
    if np.all(up):
        return (_order_up_q(-0.5, m, p0m, p1m, z, w),
                _order_up_q(0.5, m, p0p, p1p, z, w))
    eta = np.arccosh(z)
    rate = -2 * np.log(np.tanh(eta / 2))
    rate = np.where(up, np.inf, rate)
    extra = int(math.ceil(40.0 / max(float(np.min(rate)), 1e-4))) + 10
    top = m + min(extra, 200000)
    res = []
    for nu, norm in ((-0.5, p0m), (0.5, p0p)):
        # r holds P^mu / P^(mu+1), started from P^(top+2) = 0
        r = np.full_like(z, np.inf)
        prod = np.ones_like(z)
        for mu in range(top, -1, -1):
            r = (1 / r + 2 * (mu + 1) * z / w) / ((nu - mu) * (nu + mu + 1))
            if mu < m:
                prod = prod * r
        res.append(norm / prod)
    if np.any(up):
        res[0] = np.where(up, _order_up_q(-0.5, m, p0m, p1m, z, w), res[0])
        res[1] = np.where(up, _order_up_q(0.5, m, p0p, p1p, z, w), res[1])
    return res[0], res[1]


def legendre_p_table(nu0, m, count, z):
    """P^m_nu(z) for nu = nu0, nu0+1, ..., on real z > 1 or complex z
    (complex only for integer degree).  Forward recurrence in degree."""
    base = _family(nu0)
    if base is None or m < 0 or not _is_int(m):
        raise DomainError("table needs integer order and integer/half-integer degree")
    m = int(m)
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = _check_real_arg(z)
    elif base != 0:
        raise DomainError("complex arguments are supported for integer degree only")
    start = int(round(nu0 - base))
    n_total = start + count
    dtype = complex if np.iscomplexobj(z) else float
    seq = np.zeros((max(n_total, 2),) + z.shape, dtype=dtype)
    if base == 0:
        if m < n_total:
            w = _sqrt_pair(z)
            seq[m] = _double_factorial_odd(m) * w ** m
            if m + 1 < n_total:
                seq[m + 1] = (2 * m + 1) * z * seq[m]
            for n in range(m + 1, n_total - 1):
                seq[n + 1] = ((2 * n + 1) * z * seq[n] - (n + m) * seq[n - 1]) / (n - m + 1)
    else:
        a, b = _p_half_order(m, z)
        seq[0], seq[1] = a, b
        for j in range(1, n_total - 1):
            nu = base + j
            seq[j + 1] = ((2 * nu + 1) * z * seq[j] - (nu + m) * seq[j - 1]) / (nu - m + 1)
    return seq[start:n_total]


# ---------------------------------------------------------------------------
# General real degree and order


def _q_hyper(nu, mu, z, d=None):
    """Q^mu_nu(z), z > 1, from the 1/z**2 hypergeometric representation."""
    a = 0.5 * (nu + mu) + 1
    b = 0.5 * (nu + mu + 1)
    c = nu + 1.5
    if kernel._is_nonpositive_int(c):
        raise DomainError("degree nu <= -3/2 on the half-integer lattice is not supported")
    pref = (np.exp(1j * np.pi * mu) * math.sqrt(math.pi)
            * kernel.gamma_ratio(nu + mu + 1, c) / 2 ** (nu + 1))
    zz = z * z
    zzm1 = (z - 1) * (z + 1) if d is None else d * (z + 1)
    f = kernel.hyp2f1_real(a, b, c, 1 / zz, zzm1 / zz)
    return pref * zzm1 ** (0.5 * mu) * z ** (-(nu + mu + 1)) * f


def legendre_q_real(nu, mu, z, zm1=None):
    """Associated Legendre function of the second kind Q^mu_nu(z), z > 1.

    Returns complex values (the exp(i pi mu) phase is kept for every order).
    Near the logarithmic singularity at z = 1, ``zm1 = z - 1`` may be
    supplied directly; it then replaces ``z``.

    Raises
    ------
    PoleError
        When nu + mu is a negative integer.
    DomainError
        When z <= 1.
    """
    s = nu + mu
    if s < 0 and _is_int(s):
        raise PoleError(f"nu + mu = {s} is a negative integer")
    z, d = _resolve_near_one(z, zm1)
    base = _family(nu)
    flat = z.reshape(-1)
    dflat = None if d is None else d.reshape(-1)
    if base is not None and _is_int(mu) and mu >= 0:
        val = legendre_q_table(nu, int(mu), 1, flat, zm1=dflat)[0]
        return _out(val.reshape(z.shape).astype(complex))
    return _out(np.asarray(_q_hyper(nu, mu, flat, dflat)).reshape(z.shape))


def legendre_p_real(nu, mu, z):
    """Associated Legendre function of the first kind P^mu_nu(z), z > 1.

    Supports integer order mu >= 0 with integer degree nu >= 0 or half-odd
    integer degree nu >= -1/2, which covers every use in the package.
    """
    z = _check_real_arg(z)
    base = _family(nu)
    if base is None or not _is_int(mu) or mu < 0:
        raise DomainError("P is implemented for integer order and integer/half-integer degree")
    flat = z.reshape(-1)
    val = legendre_p_table(nu, int(mu), 1, flat)[0]
    return _out(val.reshape(z.shape))


def legendre_pq_imag(n, m, s):
    """(P^m_n(i s), Q^m_n(i s)) for integers 0 <= m <= n and s > 0."""
    if not (0 <= m <= n) or not (_is_int(n) and _is_int(m)):
        raise DomainError("need integers 0 <= m <= n")
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise DomainError("s must be positive")
    z = (1j * s).reshape(-1)
    p = legendre_p_table(n, m, 1, z)[0].reshape(s.shape)
    q = legendre_q_table(n, m, 1, z)[0].reshape(s.shape)
    return _out(p), _out(q)


# ---------------------------------------------------------------------------
# Scaled products for addition series


def _growth(z):
    """rho = |z + w| = e**xi, the per-degree growth factor of P."""
    return np.abs(z + _sqrt_pair(z))


def _log_gamma_signed(x):
    from scipy.special import gammaln, gammasgn
    return gammaln(x), gammasgn(x)


def _scaled_p(base, m, n_total, z):
    """P_nu^m(z) * Gamma(nu+3/2)/Gamma(nu+m+1) * rho**-(nu+1/2)."""
    rho = _growth(z)
    dtype = complex if np.iscomplexobj(z) else float
    out = np.zeros((max(n_total, 2),) + z.shape, dtype=dtype)
    if base == 0:
        if m >= n_total:
            return out[:n_total]
        w = _sqrt_pair(z)
        lg = (math.lgamma(2 * m + 1) - m * math.log(2) - math.lgamma(m + 1)
              + math.lgamma(m + 1.5) - math.lgamma(2 * m + 1))
        out[m] = np.exp(lg + m * np.log(w.astype(dtype)) - (m + 0.5) * np.log(rho))
        start = m
    else:
        a, b = _p_half_order(m, z)
        g0 = kernel.gamma_ratio(1.0, m + 0.5)
        g1 = kernel.gamma_ratio(2.0, m + 1.5)
        out[0] = a * g0
        out[1] = b * g1 / rho
        start = 0
    for j in range(start, n_total - 1):
        nu = base + j
        if base == 0 and j == m:
            out[j + 1] = (2 * nu + 1) * z * (nu + 1.5) / (nu + m + 1) / rho * out[j] / (nu - m + 1)
            continue
        if base != 0 and j == 0:
            continue
        r1 = (nu + 1.5) / (nu + m + 1)
        r0 = r1 * (nu + 0.5) / (nu + m)
        out[j + 1] = ((2 * nu + 1) * z * r1 / rho * out[j]
                      - (nu + m) * r0 / (rho * rho) * out[j - 1]) / (nu - m + 1)
    return out[:n_total]


def _scaled_q(base, m, n_total, z):
    """Q_nu^m(z) * Gamma(nu+3/2)/Gamma(nu+m+1) * rho**(nu+1/2)."""
    rho = _growth(z)
    q0, q1, r0, r1 = _q_seeds(base, z)
    c0 = _q_degree_chain(base, 0, n_total, z, q0, q1, rho)
    c1 = _q_degree_chain(base, 1, n_total, z, r0, r1, rho)
    w = _sqrt_pair(z)
    zw = z / w
    rows = []
    for j in range(n_total):
        nu = base + j
        t0 = c0[j] * kernel.gamma_ratio(nu + 1.5, nu + 1)
        if m == 0:
            rows.append(t0)
            continue
        t1 = c1[j] * kernel.gamma_ratio(nu + 1.5, nu + 2)
        for mu in range(0, m - 1):
            t0, t1 = t1, (-2 * (mu + 1) * zw * t1 + (nu - mu) * t0) / (nu + mu + 2)
        rows.append(t1)
    return np.stack(rows)


def pq_product_table(nu0, m, count, z_lo, z_hi):
    """Gamma(nu-m+1)/Gamma(nu+m+1) P_nu^m(z_lo) Q_nu^m(z_hi) for a run of degrees.

    Degrees are nu0, nu0+1, ...; ``z_lo`` and ``z_hi`` are scalars on the
    same ray (both real > 1, or both on the positive imaginary axis) with
    |z_lo| <= |z_hi|.  Both factors are carried in gamma- and
    exponentially-scaled form, so large degree or order does not overflow.
    For integer degree below the order the product is zero.
    """
    base = _family(nu0)
    if base is None or m < 0 or not _is_int(m):
        raise DomainError("need integer order and integer/half-integer degree")
    m = int(m)
    if m > 150:
        raise DomainError("orders above 150 are not supported")
    cplx = np.iscomplexobj(z_lo) or np.iscomplexobj(z_hi)
    zl = np.atleast_1d(np.asarray(z_lo, dtype=complex if cplx else float))
    zh = np.atleast_1d(np.asarray(z_hi, dtype=complex if cplx else float))
    if not cplx and (zl[0] <= 1 or zh[0] <= 1):
        raise DomainError("arguments must exceed 1")
    start = int(round(nu0 - base))
    n_total = start + count
    ph = _scaled_p(base, m, n_total, zl)[:, 0]
    qh = _scaled_q(base, m, n_total, zh)[:, 0]
    rl, rh = float(_growth(zl)[0]), float(_growth(zh)[0])
    nus = base + np.arange(n_total)
    # F = Gamma(nu+m+1) Gamma(nu-m+1) / Gamma(nu+3/2)**2 by recurrence
    first = m if base == 0 else 0
    F = np.zeros(n_total)
    nu = base + first
    if first < n_total:
        l1, s1 = _log_gamma_signed(nu + m + 1)
        l2, s2 = _log_gamma_signed(nu - m + 1)
        l3, _ = _log_gamma_signed(nu + 1.5)
        F[first] = s1 * s2 * math.exp(l1 + l2 - 2 * l3)
        for j in range(first, n_total - 1):
            nu = base + j
            F[j + 1] = F[j] * (nu + m + 1) * (nu - m + 1) / (nu + 1.5) ** 2
    out = F * ph * qh * np.exp((nus + 0.5) * math.log(rl / rh))
    return out[start:]


# ---------------------------------------------------------------------------
# Large-degree estimates


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Leading term of a large-degree formula; the relative error is O(1/nu)."""

    value: complex
    error_order: str = "O(1/nu)"


_KINDS = ("P-real", "Q-real", "P-imag", "Q-imag")


def asymptotic_legendre(kind, nu, mu, xi):
    """Leading large-degree term of P or Q at cosh(xi) or i sinh(xi)."""
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}")
    if xi <= 0 or nu < 0:
        raise DomainError("need xi > 0 and nu >= 0")
    g = kernel.gamma_ratio(nu + mu + 1, nu + 1.5)
    if kind == "P-real":
        v = (2 * math.pi * math.sinh(xi)) ** -0.5 * g * math.exp((nu + 0.5) * xi)
    elif kind == "Q-real":
        v = ((math.pi / (2 * math.sinh(xi))) ** 0.5 * g
             * np.exp(-(nu + 0.5) * xi + 1j * math.pi * mu))
    elif kind == "P-imag":
        v = ((2 * math.pi * math.cosh(xi)) ** -0.5 * g
             * np.exp((nu + 0.5) * xi + 1j * math.pi * nu / 2))
    else:
        v = ((math.pi / (2 * math.cosh(xi))) ** 0.5 * g
             * np.exp(-(nu + 0.5) * xi - 1j * math.pi * (nu + 1) / 2 + 1j * math.pi * mu))
    return AsymptoticEstimate(complex(v))
