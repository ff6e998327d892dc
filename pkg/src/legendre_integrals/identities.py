"""Executable checks of the integral identities and addition theorems.

Each identity has a tag, a fixed parameter vocabulary and a left-hand side
computed by quadrature or series summation.  The right-hand side is a closed
form evaluated through a different code path, so agreement between the two is
evidence rather than tautology.
"""

from dataclasses import dataclass, field
from enum import Enum
import math
import time
import warnings

import numpy as np
from scipy.special import jv

from . import kernel
from .errors import ConvergenceError, DomainError
from .geometry import (CoordSystem, chi_with_gap, recip_distance, to_cartesian,
                       ordered_pair)
from .legendre import (chebyshev_t, ferrers_p, ferrers_p_normalized_table,
                       legendre_p_real, legendre_poly, legendre_pq_imag,
                       legendre_q_real, legendre_q_table, pq_product_table)
from .quadrature import (BesselOscillator, CosineOscillator, SingularitySpec,
                         integrate_finite, integrate_semi_decaying,
                         integrate_semi_oscillatory)

__all__ = [
    "IdentityId", "IdentityCase", "IdentityReport", "ParamDomain", "PARAM_NAMES",
    "heine_sum", "addition_series", "evaluate_identity", "default_domain",
    "f_qje", "whipple_consistency", "GEOM_SYSTEMS",
]


class IdentityId(str, Enum):
    WATSON_QJ = "WATSON_QJ"
    PRUDNIKOV_INV = "PRUDNIKOV_INV"
    HARDY_EXT = "HARDY_EXT"
    HANKEL_Q1 = "HANKEL_Q1"
    PARABOLIC_SRC = "PARABOLIC_SRC"
    PARABOLIC_INV = "PARABOLIC_INV"
    COSINE_IK = "COSINE_IK"
    COSINE_EQUAL = "COSINE_EQUAL"
    HANKEL_ROUNDTRIP = "HANKEL_ROUNDTRIP"
    DEGREE_ORTHO = "DEGREE_ORTHO"
    ORDER_ORTHO = "ORDER_ORTHO"
    CHEB_ORTHO = "CHEB_ORTHO"
    SPH_NU = "SPH_NU"
    SPH_COR = "SPH_COR"
    PROLATE = "PROLATE"
    OBLATE = "OBLATE"
    BISPHERE = "BISPHERE"
    SPH_ADD = "SPH_ADD"
    TOROIDAL = "TOROIDAL"
    HEINE = "HEINE"
    GEOM_ORACLE = "GEOM_ORACLE"

    def __str__(self):
        return self.value


I = IdentityId

# public parameter vocabulary (order matters for reports)
PARAM_NAMES = {
    I.WATSON_QJ: ("a", "b", "c", "nu"),
    I.PRUDNIKOV_INV: ("a", "c", "k", "nu"),
    I.HARDY_EXT: ("a", "b", "c", "nu"),
    I.HANKEL_Q1: ("a", "c", "k", "nu"),
    I.PARABOLIC_SRC: ("m", "lam", "lam2", "mu", "mu2"),
    I.PARABOLIC_INV: ("m", "k", "lam2", "mu", "mu2"),
    I.COSINE_IK: ("a", "b", "k", "nu"),
    I.COSINE_EQUAL: ("a", "k", "nu"),
    I.HANKEL_ROUNDTRIP: ("nu", "r", "alpha", "step"),
    I.DEGREE_ORTHO: ("n", "n2", "m"),
    I.ORDER_ORTHO: ("n", "m", "m2"),
    I.CHEB_ORTHO: ("m", "n"),
    I.SPH_NU: ("n", "m", "nu", "r", "r2", "theta2"),
    I.SPH_COR: ("n", "m", "r", "r2", "theta2"),
    I.PROLATE: ("n", "m", "sigma", "sigma2", "theta2"),
    I.OBLATE: ("n", "m", "sigma", "sigma2", "theta2"),
    I.BISPHERE: ("n", "m", "sigma", "sigma2", "theta2"),
    I.SPH_ADD: ("n", "m", "theta2", "dphi"),
    I.TOROIDAL: ("n", "m", "sigma", "sigma2"),
    I.HEINE: ("z", "x"),
    I.GEOM_ORACLE: ("system", "sigma", "angle", "phi", "sigma2", "angle2", "phi2"),
}

_INTEGER_PARAMS = {"n", "n2", "m", "m2", "step", "system"}

LHS_METHODS = ("finite-quadrature", "semi-decaying", "semi-oscillatory", "series")

_DEFAULT_METHOD = {
    I.WATSON_QJ: "semi-decaying", I.HARDY_EXT: "semi-decaying",
    I.PARABOLIC_SRC: "semi-decaying",
    I.PRUDNIKOV_INV: "semi-oscillatory", I.HANKEL_Q1: "semi-oscillatory",
    I.PARABOLIC_INV: "semi-oscillatory", I.COSINE_IK: "semi-oscillatory",
    I.COSINE_EQUAL: "semi-oscillatory", I.HANKEL_ROUNDTRIP: "semi-oscillatory",
    I.HEINE: "series", I.GEOM_ORACLE: "series",
}

# systems covered by the double-expansion oracle, by integer code
GEOM_SYSTEMS = ("oblate-spheroidal", "bispherical", "toroidal")

# identities whose two sides are real as printed
_COMPLEX_IDS = {I.SPH_NU}


# ---------------------------------------------------------------------------
# Cases and reports


@dataclass(frozen=True)
class IdentityCase:
    """One parameter point of one identity.

    Parameters
    ----------
    id : IdentityId or str
    params : dict
        Values for exactly the names in ``PARAM_NAMES[id]``.
    tol : float
        Pass threshold on the relative error and the imaginary leak.
    lhs_method : str, optional
        Defaults to the method natural for the identity.
    budget : int, optional
        Lobe budget for oscillatory integrals, interval budget for finite
        quadrature, or term budget for series.
    tags : tuple of str
        Free-form labels, e.g. ``"singular-quadrature"`` for cases placed on
        a coincidence.
    """

    id: IdentityId
    params: dict
    tol: float = 1e-7
    lhs_method: str = ""
    budget: int = 0
    tags: tuple = ()

    def __post_init__(self):
        try:
            ident = IdentityId(str(self.id))
        except ValueError:
            raise DomainError(f"unknown identity {self.id!r}") from None
        object.__setattr__(self, "id", ident)
        names = PARAM_NAMES[ident]
        got = set(self.params)
        if got != set(names):
            missing = sorted(set(names) - got)
            extra = sorted(got - set(names))
            raise DomainError(f"{ident}: parameters {names} expected "
                              f"(missing {missing}, unexpected {extra})")
        clean = {}
        for k in names:
            v = self.params[k]
            if k in _INTEGER_PARAMS:
                if float(v) != int(v):
                    raise DomainError(f"{ident}: {k} must be an integer")
                clean[k] = int(v)
            else:
                clean[k] = float(v)
                if not math.isfinite(clean[k]):
                    raise DomainError(f"{ident}: {k} must be finite")
        object.__setattr__(self, "params", clean)
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        method = self.lhs_method or _DEFAULT_METHOD.get(ident, "finite-quadrature")
        if method not in LHS_METHODS:
            raise DomainError(f"unknown lhs_method {method!r}")
        object.__setattr__(self, "lhs_method", method)
        object.__setattr__(self, "tags", tuple(self.tags))
        _check_hypotheses(ident, clean)


@dataclass
class IdentityReport:
    """Outcome of one identity check; ``passed`` is the pass flag."""

    case: IdentityCase
    lhs: complex
    rhs: complex
    rel_error: float
    imag_leak: float
    passed: bool
    evaluations: int
    millis: float = None
    converged: bool = True
    note: str = ""


def _require(cond, ident, msg):
    if not cond:
        raise DomainError(f"{ident}: {msg}")


def _check_hypotheses(ident, p):
    pos = lambda *ks: all(p[k] > 0 for k in ks)
    if ident in (I.WATSON_QJ, I.HARDY_EXT):
        _require(pos("a", "b", "c"), ident, "a, b, c must be positive")
        # the Bessel kernel is defined for nu >= -1/2; the Hardy form would
        # allow nu > -1
        _require(p["nu"] > -0.5 if ident == I.WATSON_QJ else p["nu"] >= -0.5,
                 ident, "nu out of range")
    elif ident in (I.PRUDNIKOV_INV, I.HANKEL_Q1):
        _require(pos("a", "c", "k"), ident, "a, c, k must be positive")
        _require(p["nu"] > -0.5 if ident == I.PRUDNIKOV_INV else p["nu"] >= -0.5,
                 ident, "nu out of range")
    elif ident in (I.PARABOLIC_SRC, I.PARABOLIC_INV):
        _require(p["m"] >= 0, ident, "m must be non-negative")
        other = "lam" if ident == I.PARABOLIC_SRC else "k"
        _require(pos(other, "lam2", "mu", "mu2"), ident, "coordinates must be positive")
        _require(p["mu"] != p["mu2"], ident, "needs mu != mu2")
    elif ident == I.COSINE_IK:
        _require(pos("a", "b", "k"), ident, "a, b, k must be positive")
        _require(p["b"] <= p["a"], ident, "needs b <= a")
        _require(p["nu"] > -0.5, ident, "needs nu > -1/2")
    elif ident == I.COSINE_EQUAL:
        _require(pos("a", "k"), ident, "a, k must be positive")
        _require(p["nu"] > -0.5, ident, "needs nu > -1/2")
    elif ident == I.HANKEL_ROUNDTRIP:
        _require(p["nu"] >= -0.5, ident, "needs nu >= -1/2")
        _require(pos("r", "alpha"), ident, "r and alpha must be positive")
        _require(p["step"] in (0, 1), ident, "step is 0 or 1")
    elif ident == I.DEGREE_ORTHO:
        _require(0 <= p["m"] <= min(p["n"], p["n2"]), ident, "needs m <= n, n2")
    elif ident == I.ORDER_ORTHO:
        _require(1 <= min(p["m"], p["m2"]) and max(p["m"], p["m2"]) <= p["n"],
                 ident, "needs 1 <= m, m2 <= n")
    elif ident == I.CHEB_ORTHO:
        _require(p["m"] >= 0 and p["n"] >= 0, ident, "degrees must be non-negative")
    elif ident in (I.SPH_NU, I.SPH_COR):
        _require(0 <= p["m"] <= p["n"], ident, "needs 0 <= m <= n")
        _require(pos("r", "r2") and p["r"] != p["r2"], ident, "needs r, r2 > 0 and r != r2")
        _require(0 < p["theta2"] < math.pi, ident, "theta2 must lie in (0, pi)")
        if ident == I.SPH_NU:
            nu = p["nu"]
            _require(not (nu >= 2 * p["m"] and float(nu).is_integer() and int(nu) % 2 == 0),
                     ident, "nu hits the excluded lattice 2m, 2m+2, ...")
            _require(nu > -1, ident, "needs nu > -1")
    elif ident in (I.PROLATE, I.OBLATE, I.BISPHERE):
        _require(0 <= p["m"] <= p["n"], ident, "needs 0 <= m <= n")
        _require(pos("sigma", "sigma2"), ident, "sigma, sigma2 must be positive")
        if ident == I.OBLATE:
            _require(0 <= p["theta2"] <= math.pi, ident, "theta2 must lie in [0, pi]")
        else:
            _require(0 < p["theta2"] < math.pi, ident, "theta2 must lie in (0, pi)")
    elif ident == I.SPH_ADD:
        _require(1 <= p["m"] <= p["n"], ident, "needs 1 <= m <= n")
        _require(0 <= p["theta2"] <= math.pi, ident, "theta2 must lie in [0, pi]")
    elif ident == I.TOROIDAL:
        _require(p["m"] >= 0 and p["n"] >= 0, ident, "n, m must be non-negative")
        _require(pos("sigma", "sigma2"), ident, "sigma, sigma2 must be positive")
    elif ident == I.HEINE:
        _require(p["z"] > 1 and -1 <= p["x"] <= 1, ident, "needs z > 1 and |x| <= 1")
    elif ident == I.GEOM_ORACLE:
        _require(p["system"] in (0, 1, 2), ident, "system code is 0, 1 or 2")
        _require(pos("sigma", "sigma2"), ident, "sigma, sigma2 must be positive")


# ---------------------------------------------------------------------------
# Shared closed forms


def f_qje(k, a, c, nu):
    """(pi sqrt(c)/k) e**(-k a) J_nu(k c): the transform pair of the QJ
    integral, used as the right-hand side of its inverse."""
    return math.pi * math.sqrt(c) / k * math.exp(-k * a) * kernel.bessel_j(nu, k * c)


def _qj_chi(a, b, c):
    """Argument (a^2+b^2+c^2)/(2bc) and its excess over 1 (arrays allowed)."""
    b = np.asarray(b, dtype=float)
    gap = (a * a + (b - c) ** 2) / (2 * b * c)
    return 1.0 + gap, gap


def _q_real(nu, mu, chi, gap):
    """Real part of Q^mu_nu at chi, with chi - 1 supplied separately."""
    return np.real(legendre_q_real(nu, mu, chi, zm1=gap))


def _rhs_qj(a, b, c, nu):
    chi, gap = _qj_chi(a, b, c)
    return float(_q_real(nu - 0.5, 0, chi, gap)) / (math.pi * math.sqrt(b * c))


def _rhs_hardy(a, b, c, nu):
    chi, gap = _qj_chi(a, b, c)
    q1 = complex(legendre_q_real(nu - 0.5, 1, chi, zm1=gap))
    den = (math.pi * math.sqrt(b * c) * math.sqrt(a * a + (b + c) ** 2)
           * math.sqrt(a * a + (b - c) ** 2))
    return -2 * a * q1 / den


def whipple_consistency(a, b, c, nu, h=1e-4):
    """Relative mismatch between -d/da of the QJ closed form (central
    difference) and the Hardy closed form."""
    d = -(_rhs_qj(a + h, b, c, nu) - _rhs_qj(a - h, b, c, nu)) / (2 * h)
    ref = _rhs_hardy(a, b, c, nu).real
    return abs(d - ref) / abs(ref)


def _lgamma_ratio_fact(n, m):
    """log of (n-m)! (n+m)! / n!**2."""
    return math.lgamma(n - m + 1) + math.lgamma(n + m + 1) - 2 * math.lgamma(n + 1)


def _ferrers_env(n_arr, m):
    """Square of the bound (m+n)!/n! on |P_n^m| after normalization by
    sqrt((n-m)!/(n+m)!)."""
    return np.exp([_lgamma_ratio_fact(int(n), m) for n in n_arr])


# ---------------------------------------------------------------------------
# Series


def heine_sum(z, x, M=None, tol=1e-12, max_terms=200000):
    """Chebyshev expansion of 1/sqrt(z - x) with Q_{m-1/2}(z) coefficients.

    With ``M`` given, the partial sum through m = M is returned.  Otherwise
    terms are added until the bound on the remainder, from
    Q_{nu+1}(z) <= e**(-xi) Q_nu(z) with z = cosh xi and |T_m| <= 1, drops
    below ``tol`` relative to the sum.  Convergence slows like 1/xi as
    z -> 1+, and a RuntimeWarning is issued past 1000 terms.
    """
    if not z > 1 or not -1 <= x <= 1:
        raise DomainError("needs z > 1 and |x| <= 1")
    xi = math.acosh(z)
    q = math.exp(-xi)
    c = math.sqrt(2) / math.pi
    th = math.acos(max(-1.0, min(1.0, x)))
    count = int(M) + 1 if M is not None else int(math.ceil((math.log(1 / tol) + 5) / xi)) + 2
    warned = False
    while True:
        if count > max_terms:
            raise ConvergenceError("z too close to 1 for the term budget")
        if M is None and count > 1000 and not warned:
            warnings.warn(f"Heine series needs {count} terms near z = 1", RuntimeWarning)
            warned = True
        qs = legendre_q_table(-0.5, 0, count + 1, np.array([float(z)]))[:, 0].real
        m = np.arange(count)
        eps = np.where(m == 0, 1.0, 2.0)
        s = c * float(np.sum(eps * qs[:count] * np.cos(m * th)))
        if M is not None:
            return s
        # remainder: 2 c sum_{j >= count} Q_{j-1/2} <= 2 c Q_{count-1/2} / (1 - q)
        if 2 * c * qs[count] / (1 - q) <= tol * abs(s):
            return s
        count = int(count * 1.5) + 8


def _tail_ok(env, total, tol, q_floor):
    """Geometric remainder bound from the last two envelope terms."""
    n = env.size
    if n < 3:
        return math.inf
    last, prev = env[-1], env[-2]
    ratio = max(q_floor, last / prev if prev > 0 else q_floor)
    ratio *= (2 * n + 3) / (2 * n + 1)
    if ratio >= 1:
        return math.inf
    return last * ratio / (1 - ratio)


def _sum_with_tail(term_fn, env_fn, n_first, q, tol, budget, guess):
    """Sum terms n_first, n_first+1, ... in growing blocks until the envelope
    tail bound falls below tol relative to the sum."""
    count = max(8, guess)
    while True:
        if count > budget:
            raise ConvergenceError(f"series needs more than {budget} terms")
        terms = term_fn(count)
        env = env_fn(count, terms)
        total = complex(np.sum(terms))
        tail = _tail_ok(env, total, tol, q)
        if tail <= tol * max(abs(total), 1e-300):
            return total, count, tail
        count = int(count * 1.6) + 8


def _ordered(s1, s2):
    lo, hi = ordered_pair(s1, s2)
    return lo, hi


def addition_series(ident, params, tol=1e-12, budget=20000, return_terms=False):
    """Sum the addition theorem for ``ident`` at ``params``.

    ``params`` per identity:

    * SPH_NU: m, nu, r, r2, theta, theta2.  Returns
      (chi^2-1)^((nu+1)/4) sin(theta)^(nu/2) Q^{-(nu+1)/2}_{m-1/2}(chi).
    * PROLATE, OBLATE, BISPHERE: m, sigma, sigma2, theta, theta2.  Returns
      Q_{m-1/2}(chi).
    * TOROIDAL: m, sigma, sigma2, psi.  Returns Q_{m-1/2}(chi).
    * SPH_ADD: n, theta, theta2, dphi.  Returns P_n(cos gamma).

    Terms are summed until the envelope bound (Ferrers factors replaced by
    (m+n)!/n!, geometric decay of the P Q products) on the remainder drops
    below ``tol`` relative to the sum.

    Returns
    -------
    complex, or (complex, int) with ``return_terms``
    """
    ident = IdentityId(str(ident))
    p = dict(params)
    if ident == I.SPH_ADD:
        n = int(p["n"])
        x, xp = math.cos(p["theta"]), math.cos(p["theta2"])
        total = 0.0
        for m in range(n + 1):
            a = ferrers_p_normalized_table(n, m, x)[n]
            b = ferrers_p_normalized_table(n, m, xp)[n]
            total += (1.0 if m == 0 else 2.0) * a * b * math.cos(m * p["dphi"])
        out = complex(total)
        return (out, n + 1) if return_terms else out

    m = int(p["m"])
    if ident == I.SPH_NU:
        nu = float(p["nu"])
        r, rp = float(p["r"]), float(p["r2"])
        if r == rp:
            raise ConvergenceError("r = r2: the series does not converge geometrically")
        rl, rh = _ordered(r, rp)
        z0 = (r * r + rp * rp) / (2 * r * rp)
        d0 = (r - rp) ** 2 / (2 * r * rp)
        xi = math.acosh(z0)
        mu = -(nu + 2) / 2
        pref = (1j * math.sqrt(math.pi) / 2 ** ((nu + 3) / 2)
                * math.sin(p["theta2"]) ** (-nu / 2)
                * ((rh * rh - rl * rl) / (r * rp)) ** ((nu + 2) / 2))
        x, xp = math.cos(p["theta"]), math.cos(p["theta2"])

        def terms(count):
            N = m + count - 1
            a = ferrers_p_normalized_table(N, m, x)[m:]
            b = ferrers_p_normalized_table(N, m, xp)[m:]
            ns = np.arange(m, N + 1)
            qn = np.array([complex(legendre_q_real(int(k), mu, z0, zm1=d0)) for k in ns])
            terms._q = qn
            return pref * (2 * ns + 1) * a * b * qn

        def env(count, t):
            ns = np.arange(m, m + count)
            return (2 * ns + 1) * _ferrers_env(ns, m) * np.abs(terms._q)

        guess = int((math.log(1 / tol) + 5) / xi) + 4
        total, cnt, _ = _sum_with_tail(terms, env, m, math.exp(-xi), tol, budget, guess)
        return (total, cnt) if return_terms else total

    if ident == I.TOROIDAL:
        s1, s2 = float(p["sigma"]), float(p["sigma2"])
        if s1 == s2:
            raise ConvergenceError("sigma = sigma2: the series converges only in L2")
        lo, hi = _ordered(s1, s2)
        zl, zh = math.cosh(lo), math.cosh(hi)
        pref = (-1) ** m * math.sqrt(math.sinh(s1) * math.sinh(s2))
        psi = float(p["psi"])

        def terms(count):
            pq = pq_product_table(-0.5, m, count, zl, zh)
            terms._pq = pq
            ns = np.arange(count)
            return pref * np.where(ns == 0, 1.0, 2.0) * np.cos(ns * psi) * pq

        env = lambda count, t: 2 * np.abs(terms._pq)
        guess = int((math.log(1 / tol) + 5) / (hi - lo)) + m + 4
        total, cnt, _ = _sum_with_tail(terms, env, 0, math.exp(lo - hi), tol, budget, guess)
        return (total, cnt) if return_terms else total

    if ident not in (I.PROLATE, I.OBLATE, I.BISPHERE):
        raise DomainError(f"no addition series for {ident}")
    s1, s2 = float(p["sigma"]), float(p["sigma2"])
    if s1 == s2:
        raise ConvergenceError("sigma = sigma2: the series converges only in L2")
    lo, hi = _ordered(s1, s2)
    th, thp = float(p["theta"]), float(p["theta2"])
    x, xp = math.cos(th), math.cos(thp)
    if ident == I.PROLATE:
        pref = math.pi * (-1) ** m * math.sqrt(math.sinh(s1) * math.sinh(s2)
                                               * math.sin(th) * math.sin(thp))
        za, zb = math.cosh(lo), math.cosh(hi)
    elif ident == I.OBLATE:
        pref = 1j * math.pi * (-1) ** m * math.sqrt(math.cosh(s1) * math.cosh(s2)
                                                    * math.sin(th) * math.sin(thp))
        za, zb = 1j * math.sinh(lo), 1j * math.sinh(hi)
    else:
        pref = math.pi * math.sqrt(math.sin(th) * math.sin(thp))

    def terms(count):
        N = m + count - 1
        a = ferrers_p_normalized_table(N, m, x)[m:]
        b = ferrers_p_normalized_table(N, m, xp)[m:]
        ns = np.arange(m, N + 1)
        if ident == I.BISPHERE:
            k = np.exp(-(ns + 0.5) * (hi - lo))
            terms._k = k
            return pref * a * b * k
        k = pq_product_table(m, m, count, za, zb)
        terms._k = (2 * ns + 1) * k
        return pref * (2 * ns + 1) * a * b * k

    def env(count, t):
        ns = np.arange(m, m + count)
        return _ferrers_env(ns, m) * np.abs(terms._k)

    guess = int((math.log(1 / tol) + 5) / (hi - lo)) + 4
    total, cnt, _ = _sum_with_tail(terms, env, m, math.exp(lo - hi), tol, budget, guess)
    return (total, cnt) if return_terms else total


# ---------------------------------------------------------------------------
# Double expansions of the reciprocal distance


def _geom_points(p):
    tag = GEOM_SYSTEMS[p["system"]]
    names = {"oblate-spheroidal": ("sigma", "theta"), "bispherical": ("sigma", "theta"),
             "toroidal": ("sigma", "psi")}[tag]
    first = {names[0]: p["sigma"], names[1]: p["angle"], "phi": p["phi"]}
    second = {names[0]: p["sigma2"], names[1]: p["angle2"], "phi": p["phi2"]}
    return tag, first, second


def _double_oblate_bisphere(tag, p, tol, budget):
    s1, s2 = p["sigma"], p["sigma2"]
    lo, hi = _ordered(s1, s2)
    gap = hi - lo
    if gap <= 0:
        raise ConvergenceError("equal sigma: the double series does not converge")
    x, xp = math.cos(p["angle"]), math.cos(p["angle2"])
    dphi = p["phi"] - p["phi2"]
    q = math.exp(-gap)
    N = int((math.log(1 / tol) + 8) / gap) + 10
    while True:
        if N > min(budget, 150):
            raise ConvergenceError("double series needs degrees beyond the supported range")
        block = np.zeros(N + 1, dtype=complex)
        mass = np.zeros(N + 1)
        for m in range(N + 1):
            a = ferrers_p_normalized_table(N, m, x)[m:]
            b = ferrers_p_normalized_table(N, m, xp)[m:]
            ns = np.arange(m, N + 1)
            em = 1.0 if m == 0 else 2.0
            if tag == "oblate-spheroidal":
                k = pq_product_table(m, m, N - m + 1, 1j * math.sinh(lo), 1j * math.sinh(hi))
                t = (-1) ** m * em * (2 * ns + 1) * a * b * k * math.cos(m * dphi)
            else:
                t = em * a * b * np.exp(-(ns + 0.5) * gap) * math.cos(m * dphi)
            block[m:] += t
            mass[m:] += np.abs(t)
        total = complex(np.sum(block))
        ratio = max(q, mass[-1] / mass[-2] if mass[-2] > 0 else q)
        tail = mass[-1] * ratio / (1 - ratio) if ratio < 1 else math.inf
        if tail <= tol * abs(total):
            break
        N = int(N * 1.5)
    if tag == "oblate-spheroidal":
        return 1j * total, N + 1
    d = math.sqrt((math.cosh(s1) - x) * (math.cosh(s2) - xp))
    return d * total, N + 1


def _double_toroidal(p, tol, budget):
    s1, s2 = p["sigma"], p["sigma2"]
    lo, hi = _ordered(s1, s2)
    if hi == lo:
        raise ConvergenceError("equal sigma: the double series does not converge")
    zl, zh = math.cosh(lo), math.cosh(hi)
    dpsi = p["angle"] - p["angle2"]
    dphi = p["phi"] - p["phi2"]
    chi, _ = chi_with_gap("toroidal", s1, p["angle"], s2, p["angle2"])
    qm = math.exp(-math.acosh(float(chi)))
    qn = math.exp(lo - hi)
    Nn = int((math.log(1 / tol) + 8) / (hi - lo)) + 10
    total = 0.0
    terms = 0
    prev = None
    for m in range(0, 151):
        inner, cnt, _ = _sum_with_tail(
            lambda c: pq_product_table(-0.5, m, c, zl, zh)
            * np.where(np.arange(c) == 0, 1.0, 2.0) * np.cos(np.arange(c) * dpsi),
            lambda c, t: 2 * np.abs(pq_product_table(-0.5, m, c, zl, zh)),
            0, qn, 0.1 * tol, budget, Nn + m)
        term = (-1) ** m * (1.0 if m == 0 else 2.0) * math.cos(m * dphi) * inner.real
        total += term
        terms += cnt
        # remainder of the azimuthal series: the inner sums are
        # (-1)^m Q_{m-1/2}(chi(psi)) / sqrt(...), decaying like qm**m
        size = abs(inner.real)
        if prev is not None and m > 2:
            ratio = max(qm, size / prev if prev > 0 else qm)
            if ratio < 1 and 2 * size * ratio / (1 - ratio) <= tol * abs(total):
                break
        prev = size
    else:
        raise ConvergenceError("azimuthal series exceeded the supported order")
    d = math.sqrt((math.cosh(s1) - math.cos(p["angle"])) * (math.cosh(s2) - math.cos(p["angle2"])))
    return d * total / math.pi, terms


def _geom_oracle(p, tol, budget):
    tag, first, second = _geom_points(p)
    if tag == "toroidal":
        val, terms = _double_toroidal(p, tol, budget)
    else:
        val, terms = _double_oblate_bisphere(tag, p, tol, budget)
    sysm = CoordSystem(tag)
    ref = recip_distance(to_cartesian(sysm, first), to_cartesian(sysm, second))
    return complex(val), complex(ref), terms


# ---------------------------------------------------------------------------
# Hankel round trip


_GL_T, _GL_W = np.polynomial.legendre.leggauss(24)
_GL_T = 0.5 * (_GL_T + 1)
_GL_W = 0.5 * _GL_W


def _hankel_inner(F, nu, X, u):
    """G(u) = int_0^X x F(x) J_nu(u x) dx for each u, by composite 24-point
    Gauss-Legendre panels of about three oscillation periods each.  The first
    panel uses x = h t**4 to absorb the x**(1+nu) endpoint behaviour."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    h0 = np.minimum(X, 2.0 / np.maximum(u, 1e-300))
    t4 = _GL_T ** 4
    x0 = h0[:, None] * t4[None, :]
    w0 = h0[:, None] * (4 * _GL_T ** 3 * _GL_W)[None, :]
    out = np.sum(x0 * F(x0) * jv(nu, u[:, None] * x0) * w0, axis=1)
    rest = X - h0
    npan = np.maximum(1, np.ceil(u * rest / (6 * math.pi))).astype(int)
    npan[rest <= 0] = 0
    if npan.sum():
        pid = np.repeat(np.arange(u.size), npan)
        starts = np.cumsum(npan) - npan
        j = np.arange(pid.size) - starts[pid]
        width = rest[pid] / npan[pid]
        a = h0[pid] + j * width
        xs = a[:, None] + width[:, None] * _GL_T[None, :]
        vals = xs * F(xs) * jv(nu, u[pid][:, None] * xs) * (width[:, None] * _GL_W[None, :])
        np.add.at(out, pid, vals.sum(axis=1))
    return out


def _hankel_roundtrip(p, qtol, budget):
    nu, r, alpha = p["nu"], p["r"], p["alpha"]
    if p["step"]:
        F = lambda x: np.ones_like(x)
        X = r
        expected = 0.5
        # G(u) decays only like 1/u, so the lobe sums need extrapolation
        mode, lobes = "richardson", 60
    else:
        F = lambda x: np.exp(-alpha * x)
        X = 40.0 / alpha
        expected = math.exp(-alpha * r)
        mode, lobes = "average", 30
    g = lambda u: u * jv(nu, u * r) * _hankel_inner(F, nu, X, u)
    res = integrate_semi_oscillatory(
        g, BesselOscillator(nu, r), tol=qtol, head=0.0,
        sing=SingularitySpec.algebraic(0.0, 2 * nu + 1), max_lobes=budget or lobes, mode=mode)
    return res, expected


# ---------------------------------------------------------------------------
# Evaluation


def _theta_sing(log_at=None):
    return None if log_at is None else SingularitySpec.log(log_at)


def _lhs_rhs(case, qtol):
    """Return (lhs, rhs, magnitude, evaluations, converged)."""
    ident = case.id
    p = case.params
    budget = case.budget
    mt = 1e-3 * qtol

    if ident in (I.WATSON_QJ, I.HARDY_EXT):
        a, b, c, nu = p["a"], p["b"], p["c"], p["nu"]
        power = 1.0 if ident == I.HARDY_EXT else 0.0
        f = lambda k: k ** power * np.exp(-k * a) * jv(nu, k * b) * jv(nu, k * c)
        res = integrate_semi_decaying(f, 1.0 / a, tol=qtol,
                                      sing=SingularitySpec.algebraic(0.0, 2 * nu + power))
        rhs = _rhs_qj(a, b, c, nu) if ident == I.WATSON_QJ else _rhs_hardy(a, b, c, nu)
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident in (I.PRUDNIKOV_INV, I.HANKEL_Q1):
        a, c, k, nu = p["a"], p["c"], p["k"], p["nu"]
        if ident == I.PRUDNIKOV_INV:
            def f(b):
                chi, gap = _qj_chi(a, b, c)
                return jv(nu, k * b) * _q_real(nu - 0.5, 0, chi, gap) * np.sqrt(b)
            rhs = f_qje(k, a, c, nu)
        else:
            def f(b):
                chi, gap = _qj_chi(a, b, c)
                den = np.sqrt(a * a + (b + c) ** 2) * np.sqrt(a * a + (b - c) ** 2)
                return jv(nu, k * b) * _q_real(nu - 0.5, 1, chi, gap) * np.sqrt(b) / den
            rhs = -math.pi * math.sqrt(c) / (2 * a) * math.exp(-k * a) * kernel.bessel_j(nu, k * c)
        res = integrate_semi_oscillatory(
            f, BesselOscillator(nu, k), tol=qtol, head=c + 2 * a,
            sing=SingularitySpec.algebraic(0.0, 2 * nu + 1), max_lobes=budget or 30)
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident in (I.PARABOLIC_SRC, I.PARABOLIC_INV):
        m = p["m"]
        lam2, mu, mu2 = p["lam2"], p["mu"], p["mu2"]
        ml, mh = _ordered(mu, mu2)
        if ident == I.PARABOLIC_SRC:
            lam = p["lam"]
            f = lambda k: (k * jv(m, k * lam) * jv(m, k * lam2)
                           * kernel.bessel_ik_product(m, k * ml, k * mh))
            sing = SingularitySpec.log(0.0) if m == 0 else SingularitySpec.algebraic(0.0, 2 * m + 1)
            res = integrate_semi_decaying(f, 1.0 / (mh - ml), tol=qtol, sing=sing)
            chi, gap = chi_with_gap("parabolic", lam, mu, lam2, mu2)
            rhs = float(_q_real(m - 0.5, 0, chi, gap)) / (2 * math.pi * math.sqrt(lam * lam2 * mu * mu2))
            return res.value, rhs, res.resabs, res.evaluations, res.converged
        k = p["k"]

        def f(lam):
            chi, gap = chi_with_gap("parabolic", lam, mu, lam2, mu2)
            return _q_real(m - 0.5, 0, chi, gap) * jv(m, k * lam) * np.sqrt(lam)
        # chi is smallest near lam = lam2 mu2 / mu, sharply so when mu ~ mu2
        peak = lam2 * mu2 / mu
        sing = SingularitySpec.algebraic(0.0, 2 * m + 1).merged(SingularitySpec.log(peak))
        res = integrate_semi_oscillatory(f, BesselOscillator(m, k), tol=qtol,
                                         head=2 * max(peak, lam2), sing=sing,
                                         max_lobes=budget or 30)
        rhs = (2 * math.pi * math.sqrt(lam2 * mu * mu2) * kernel.bessel_j(m, k * lam2)
               * kernel.bessel_ik_product(m, k * ml, k * mh))
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident in (I.COSINE_IK, I.COSINE_EQUAL):
        a, k, nu = p["a"], p["k"], p["nu"]
        b = p["b"] if ident == I.COSINE_IK else a

        def f(z):
            gap = ((a - b) ** 2 + z * z) / (2 * a * b)
            return _q_real(nu - 0.5, 0, 1.0 + gap, gap) * np.cos(k * z)
        near = (a - b) < 0.1 * a
        res = integrate_semi_oscillatory(
            f, CosineOscillator(k), tol=qtol, head=2 * a,
            sing=SingularitySpec.log(0.0) if near else None, max_lobes=budget or 30)
        rhs = math.pi * math.sqrt(a * b) * kernel.bessel_ik_product(nu, k * b, k * a)
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident == I.HANKEL_ROUNDTRIP:
        res, expected = _hankel_roundtrip(p, qtol, budget)
        return res.value, expected, res.resabs, res.evaluations, res.converged

    maxint = budget or 4000
    if ident == I.DEGREE_ORTHO:
        n, n2, m = p["n"], p["n2"], p["m"]
        f = lambda t: ferrers_p(n, m, np.cos(t)) * ferrers_p(n2, m, np.cos(t)) * np.sin(t)
        h = lambda k: 2 / (2 * k + 1) * math.exp(math.lgamma(k + m + 1) - math.lgamma(k - m + 1))
        scale = math.sqrt(h(n) * h(n2))
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, abs_tol=qtol * scale, max_intervals=maxint)
        rhs = h(n) if n == n2 else 0.0
        return res.value, rhs, scale, res.evaluations, res.converged

    if ident == I.ORDER_ORTHO:
        n, m, m2 = p["n"], p["m"], p["m2"]
        f = lambda t: ferrers_p(n, m, np.cos(t)) * ferrers_p(n, m2, np.cos(t)) / np.sin(t)
        h = lambda k: math.exp(math.lgamma(n + k + 1) - math.lgamma(n - k + 1)) / k
        scale = math.sqrt(h(m) * h(m2))
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, abs_tol=qtol * scale, max_intervals=maxint)
        rhs = h(m) if m == m2 else 0.0
        return res.value, rhs, scale, res.evaluations, res.converged

    if ident == I.CHEB_ORTHO:
        m, n = p["m"], p["n"]
        f = lambda t: chebyshev_t(m, np.cos(t)) * chebyshev_t(n, np.cos(t))
        h = lambda k: math.pi / (1.0 if k == 0 else 2.0)
        scale = math.sqrt(h(m) * h(n))
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, abs_tol=qtol * scale, max_intervals=maxint)
        rhs = h(n) if m == n else 0.0
        return res.value, rhs, scale, res.evaluations, res.converged

    if ident == I.SPH_ADD:
        n, m, thp, dphi = p["n"], p["m"], p["theta2"], p["dphi"]
        ct, st = math.cos(thp), math.sin(thp)

        def f(t):
            cg = np.clip(np.cos(t) * ct + np.sin(t) * st * math.cos(dphi), -1.0, 1.0)
            return legendre_poly(n, cg) * ferrers_p(n, m, np.cos(t)) / np.sin(t)
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, mass_tol=mt, max_intervals=maxint)
        rhs = 2.0 / m * float(ferrers_p(n, m, ct)) * math.cos(m * dphi)
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident == I.SPH_COR:
        n, m, r, rp, thp = p["n"], p["m"], p["r"], p["r2"], p["theta2"]

        def f(t):
            chi, gap = chi_with_gap("spherical", r, t, rp, thp)
            return _q_real(m - 0.5, 0, chi, gap) * ferrers_p(n, m, np.cos(t)) * np.sqrt(np.sin(t))
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, mass_tol=mt, max_intervals=maxint)
        rl, rh = _ordered(r, rp)
        rhs = (2 * math.pi * math.sqrt(math.sin(thp)) / (2 * n + 1)
               * float(ferrers_p(n, m, math.cos(thp))) * (rl / rh) ** (n + 0.5))
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident == I.SPH_NU:
        n, m, nu, r, rp, thp = (p[k] for k in ("n", "m", "nu", "r", "r2", "theta2"))
        mu = -(nu + 1) / 2

        def f(t):
            chi, gap = chi_with_gap("spherical", r, t, rp, thp)
            q = legendre_q_real(m - 0.5, mu, chi, zm1=gap)
            return ((gap * (chi + 1)) ** ((nu + 1) / 4) * q * ferrers_p(n, m, np.cos(t))
                    * np.sin(t) ** ((nu + 2) / 2))
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, mass_tol=mt, max_intervals=maxint)
        rl, rh = _ordered(r, rp)
        z0 = (r * r + rp * rp) / (2 * r * rp)
        qn = complex(legendre_q_real(n, -(nu + 2) / 2, z0, zm1=(r - rp) ** 2 / (2 * r * rp)))
        rhs = (1j * math.sqrt(math.pi) / (2 ** ((nu + 1) / 2) * math.sin(thp) ** (nu / 2))
               * ((rh * rh - rl * rl) / (r * rp)) ** ((nu + 2) / 2)
               * qn * float(ferrers_p(n, m, math.cos(thp))))
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident in (I.PROLATE, I.OBLATE, I.BISPHERE):
        n, m, s1, s2, thp = (p[k] for k in ("n", "m", "sigma", "sigma2", "theta2"))
        tag = {I.PROLATE: "prolate-spheroidal", I.OBLATE: "oblate-spheroidal",
               I.BISPHERE: "bispherical"}[ident]
        lo, hi = _ordered(s1, s2)
        pn = float(ferrers_p(n, m, math.cos(thp)))
        if ident == I.OBLATE and thp in (0.0, math.pi):
            # the integrand vanishes identically in the limit; so does the
            # right-hand side through sqrt(sin theta2)
            return 0.0, 0.0, 0.0, 0, True

        def f(t):
            chi, gap = chi_with_gap(tag, s1, t, s2, thp)
            return _q_real(m - 0.5, 0, chi, gap) * ferrers_p(n, m, np.cos(t)) * np.sqrt(np.sin(t))
        sing = _theta_sing(thp if s1 == s2 else None)
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, sing=sing, mass_tol=mt, max_intervals=maxint)
        fac = math.exp(math.lgamma(n - m + 1) - math.lgamma(n + m + 1))
        if ident == I.PROLATE:
            pq = (legendre_p_real(n, m, math.cosh(lo))
                  * complex(legendre_q_real(n, m, math.cosh(hi))))
            rhs = (2 * math.pi * (-1) ** m * fac
                   * math.sqrt(math.sinh(s1) * math.sinh(s2) * math.sin(thp)) * pn * pq)
        elif ident == I.OBLATE:
            P, _ = legendre_pq_imag(n, m, math.sinh(lo))
            _, Q = legendre_pq_imag(n, m, math.sinh(hi))
            rhs = (2j * math.pi * (-1) ** m * fac
                   * math.sqrt(math.cosh(s1) * math.cosh(s2) * math.sin(thp)) * pn * P * Q)
        else:
            rhs = (2 * math.pi * math.sqrt(math.sin(thp)) / (2 * n + 1) * pn
                   * math.exp(-(n + 0.5) * (hi - lo)))
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident == I.TOROIDAL:
        n, m, s1, s2 = p["n"], p["m"], p["sigma"], p["sigma2"]
        lo, hi = _ordered(s1, s2)

        def f(psi):
            chi, gap = chi_with_gap("toroidal", s1, psi, s2, 0.0)
            return _q_real(m - 0.5, 0, chi, gap) * np.cos(n * psi)
        sing = _theta_sing(0.0 if s1 == s2 else None)
        res = integrate_finite(f, 0.0, math.pi, tol=qtol, sing=sing, mass_tol=mt, max_intervals=maxint)
        g = math.gamma(n - m + 0.5) / math.gamma(n + m + 0.5)
        pq = (legendre_p_real(n - 0.5, m, math.cosh(lo))
              * complex(legendre_q_real(n - 0.5, m, math.cosh(hi))))
        rhs = math.pi * (-1) ** m * math.sqrt(math.sinh(s1) * math.sinh(s2)) * g * pq
        return res.value, rhs, res.resabs, res.evaluations, res.converged

    if ident == I.HEINE:
        z, x = p["z"], p["x"]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            lhs = heine_sum(z, x, tol=qtol)
        rhs = 1.0 / math.sqrt(z - x)
        return lhs, rhs, abs(rhs), 1, True

    if ident == I.GEOM_ORACLE:
        lhs, rhs, terms = _geom_oracle(p, qtol, budget or 20000)
        return lhs, rhs, abs(rhs), terms, True

    raise DomainError(f"no evaluator for {ident}")


def _qtol(tol):
    return min(1e-3, max(1e-13, 0.01 * tol))


def evaluate_identity(case, timing=False):
    """Compute both sides of ``case`` and compare them.

    Numerical failures inside quadrature or series code are caught and turned
    into a failed, non-converged report; the message goes to ``note``.
    """
    t0 = time.perf_counter()
    note = ""
    try:
        lhs, rhs, mag, evals, conv = _lhs_rhs(case, _qtol(case.tol))
        lhs, rhs = complex(lhs), complex(rhs)
    except (ArithmeticError, ValueError) as exc:
        lhs = rhs = complex(math.nan, 0.0)
        mag, evals, conv = 0.0, 0, False
        note = f"{type(exc).__name__}: {exc}"
    if math.isnan(lhs.real) or math.isnan(rhs.real):
        rel = leak = math.inf
        conv = False
    elif lhs == rhs:
        rel = leak = 0.0
    else:
        den = max(abs(rhs), 1e-3 * mag)
        rel = abs(lhs - rhs) / den if den > 0 else math.inf
        if case.id in _COMPLEX_IDS:
            leak = abs((lhs / rhs).imag) if rhs != 0 else math.inf
        else:
            leak = max(abs(lhs.imag), abs(rhs.imag)) / den if den > 0 else math.inf
    if not conv and not note:
        note = "not converged"
    millis = (time.perf_counter() - t0) * 1e3 if timing else None
    passed = bool(rel <= case.tol and leak <= case.tol)
    return IdentityReport(case, lhs, rhs, float(rel), float(leak), passed, int(evals),
                          millis, bool(conv), note)


# ---------------------------------------------------------------------------
# Sampling domains


@dataclass(frozen=True)
class ParamDomain:
    """Sampling box for one identity.

    ``box`` maps each parameter to ``(kind, lo, hi)`` with kind ``"real"`` or
    ``"int"``; ``guards`` lists the extra constraints the sampler enforces.
    """

    id: IdentityId
    box: dict
    guards: tuple = ()
    near_singular: str = ""

    def sample(self, rng, index):
        """Draw the parameters of case ``index`` from a numpy Generator."""
        return _SAMPLERS[self.id](rng, index)


ANGLE = (0.1, math.pi - 0.1)
RADIAL = (0.2, 5.0)
NU = (-0.4, 4.0)


def _sep(rng, lo, hi, frac=0.05):
    """Two draws with |x - y| >= frac * max(x, y)."""
    while True:
        x, y = rng.uniform(lo, hi, 2)
        if abs(x - y) >= frac * max(x, y):
            return float(x), float(y)


def _nu_off_lattice(rng, m):
    while True:
        nu = float(rng.uniform(*NU))
        k = round(nu / 2)
        if 2 * k >= 2 * m and abs(nu - 2 * k) < 0.1:
            continue
        return nu


def _im(rng, lo, hi):
    return int(rng.integers(lo, hi + 1))


def _u(rng, lo, hi):
    return float(rng.uniform(lo, hi))


def _nm(rng, mmin=0, nmax=8):
    n = _im(rng, mmin, nmax)
    return n, _im(rng, mmin, n)


def _s_qj(rng, i):
    return dict(a=_u(rng, 0.3, 3), b=_u(rng, 0.2, 4), c=_u(rng, 0.2, 4), nu=_u(rng, *NU))


def _s_inv(rng, i):
    return dict(a=_u(rng, 0.3, 3), c=_u(rng, 0.2, 4), k=_u(rng, 0.2, 4), nu=_u(rng, *NU))


def _s_par_src(rng, i):
    mu, mu2 = _sep(rng, *RADIAL)
    return dict(m=_im(rng, 0, 6), lam=_u(rng, *RADIAL), lam2=_u(rng, *RADIAL), mu=mu, mu2=mu2)


def _s_par_inv(rng, i):
    mu, mu2 = _sep(rng, *RADIAL)
    return dict(m=_im(rng, 0, 6), k=_u(rng, 0.2, 4), lam2=_u(rng, *RADIAL), mu=mu, mu2=mu2)


def _s_cos(rng, i):
    a, b = sorted(rng.uniform(*RADIAL, 2), reverse=True)
    if i % 8 == 7:
        b = a
    return dict(a=float(a), b=float(b), k=_u(rng, 0.2, 4), nu=_u(rng, *NU))


def _s_cos_eq(rng, i):
    return dict(a=_u(rng, *RADIAL), k=_u(rng, 0.2, 4), nu=_u(rng, *NU))


def _s_hankel(rng, i):
    return dict(nu=_u(rng, *NU), r=_u(rng, 0.5, 3), alpha=_u(rng, 0.5, 2), step=0)


def _s_deg(rng, i):
    m = _im(rng, 0, 8)
    return dict(n=_im(rng, m, 8), n2=_im(rng, m, 8), m=m)


def _s_ord(rng, i):
    n = _im(rng, 1, 8)
    return dict(n=n, m=_im(rng, 1, n), m2=_im(rng, 1, n))


def _s_cheb(rng, i):
    return dict(m=_im(rng, 0, 8), n=_im(rng, 0, 8))


def _s_sph_nu(rng, i):
    n, m = _nm(rng)
    r, r2 = _sep(rng, *RADIAL)
    return dict(n=n, m=m, nu=_nu_off_lattice(rng, m), r=r, r2=r2, theta2=_u(rng, *ANGLE))


def _s_sph_cor(rng, i):
    n, m = _nm(rng)
    r, r2 = _sep(rng, *RADIAL)
    return dict(n=n, m=m, r=r, r2=r2, theta2=_u(rng, *ANGLE))


def _s_spheroidal(rng, i, endpoints=False):
    n, m = _nm(rng)
    s1, s2 = _u(rng, *RADIAL), _u(rng, *RADIAL)
    if i % 10 == 9:
        s2 = s1
    th = _u(rng, *ANGLE)
    if endpoints and i % 20 == 4:
        th = 0.0 if (i // 20) % 2 == 0 else math.pi
    return dict(n=n, m=m, sigma=s1, sigma2=s2, theta2=th)


def _s_sph_add(rng, i):
    n, m = _nm(rng, mmin=1)
    return dict(n=n, m=m, theta2=_u(rng, *ANGLE), dphi=_u(rng, 0, 2 * math.pi))


def _s_tor(rng, i):
    n, m = _im(rng, 0, 8), _im(rng, 0, 8)
    s1, s2 = _u(rng, *RADIAL), _u(rng, *RADIAL)
    if i % 10 == 9:
        s2 = s1
    return dict(n=n, m=m, sigma=s1, sigma2=s2)


def _s_heine(rng, i):
    z = 1 + 10 ** _u(rng, -3, -2) if i % 10 == 9 else _u(rng, 1.05, 10)
    return dict(z=z, x=_u(rng, -1, 1))


def _s_geom(rng, i):
    system = i % 3
    tag = GEOM_SYSTEMS[system]
    while True:
        s1, s2 = rng.uniform(*RADIAL, 2)
        if tag == "toroidal":
            s1, s2 = rng.uniform(0.2, 3.0, 2)
            a1, a2 = rng.uniform(0, 2 * math.pi, 2)
        else:
            a1, a2 = rng.uniform(*ANGLE, 2)
        p1, p2 = rng.uniform(0, 2 * math.pi, 2)
        if abs(s1 - s2) < 0.25:
            continue
        if tag == "toroidal":
            chi, _ = chi_with_gap("toroidal", s1, a1, s2, a2)
            if float(chi) < 1.05:
                continue
        return dict(system=system, sigma=float(s1), angle=float(a1), phi=float(p1),
                    sigma2=float(s2), angle2=float(a2), phi2=float(p2))


_SAMPLERS = {
    I.WATSON_QJ: _s_qj, I.HARDY_EXT: _s_qj,
    I.PRUDNIKOV_INV: _s_inv, I.HANKEL_Q1: _s_inv,
    I.PARABOLIC_SRC: _s_par_src, I.PARABOLIC_INV: _s_par_inv,
    I.COSINE_IK: _s_cos, I.COSINE_EQUAL: _s_cos_eq,
    I.HANKEL_ROUNDTRIP: _s_hankel,
    I.DEGREE_ORTHO: _s_deg, I.ORDER_ORTHO: _s_ord, I.CHEB_ORTHO: _s_cheb,
    I.SPH_NU: _s_sph_nu, I.SPH_COR: _s_sph_cor,
    I.PROLATE: _s_spheroidal, I.BISPHERE: _s_spheroidal,
    I.OBLATE: lambda rng, i: _s_spheroidal(rng, i, endpoints=True),
    I.SPH_ADD: _s_sph_add, I.TOROIDAL: _s_tor, I.HEINE: _s_heine,
    I.GEOM_ORACLE: _s_geom,
}

_R = ("real",)
_BOXES = {
    I.WATSON_QJ: dict(a=(0.3, 3), b=(0.2, 4), c=(0.2, 4), nu=NU),
    I.HARDY_EXT: dict(a=(0.3, 3), b=(0.2, 4), c=(0.2, 4), nu=NU),
    I.PRUDNIKOV_INV: dict(a=(0.3, 3), c=(0.2, 4), k=(0.2, 4), nu=NU),
    I.HANKEL_Q1: dict(a=(0.3, 3), c=(0.2, 4), k=(0.2, 4), nu=NU),
    I.PARABOLIC_SRC: dict(m=(0, 6), lam=RADIAL, lam2=RADIAL, mu=RADIAL, mu2=RADIAL),
    I.PARABOLIC_INV: dict(m=(0, 6), k=(0.2, 4), lam2=RADIAL, mu=RADIAL, mu2=RADIAL),
    I.COSINE_IK: dict(a=RADIAL, b=RADIAL, k=(0.2, 4), nu=NU),
    I.COSINE_EQUAL: dict(a=RADIAL, k=(0.2, 4), nu=NU),
    I.HANKEL_ROUNDTRIP: dict(nu=NU, r=(0.5, 3), alpha=(0.5, 2), step=(0, 0)),
    I.DEGREE_ORTHO: dict(n=(0, 8), n2=(0, 8), m=(0, 8)),
    I.ORDER_ORTHO: dict(n=(1, 8), m=(1, 8), m2=(1, 8)),
    I.CHEB_ORTHO: dict(m=(0, 8), n=(0, 8)),
    I.SPH_NU: dict(n=(0, 8), m=(0, 8), nu=NU, r=RADIAL, r2=RADIAL, theta2=ANGLE),
    I.SPH_COR: dict(n=(0, 8), m=(0, 8), r=RADIAL, r2=RADIAL, theta2=ANGLE),
    I.PROLATE: dict(n=(0, 8), m=(0, 8), sigma=RADIAL, sigma2=RADIAL, theta2=ANGLE),
    I.OBLATE: dict(n=(0, 8), m=(0, 8), sigma=RADIAL, sigma2=RADIAL, theta2=(0.0, math.pi)),
    I.BISPHERE: dict(n=(0, 8), m=(0, 8), sigma=RADIAL, sigma2=RADIAL, theta2=ANGLE),
    I.SPH_ADD: dict(n=(1, 8), m=(1, 8), theta2=ANGLE, dphi=(0, 2 * math.pi)),
    I.TOROIDAL: dict(n=(0, 8), m=(0, 8), sigma=RADIAL, sigma2=RADIAL),
    I.HEINE: dict(z=(1.001, 10), x=(-1, 1)),
    I.GEOM_ORACLE: dict(system=(0, 2), sigma=RADIAL, angle=(0, 2 * math.pi), phi=(0, 2 * math.pi),
                        sigma2=RADIAL, angle2=(0, 2 * math.pi), phi2=(0, 2 * math.pi)),
}

_GUARDS = {
    I.PARABOLIC_SRC: ("|mu - mu2| >= 0.05 max(mu, mu2)",),
    I.PARABOLIC_INV: ("|mu - mu2| >= 0.05 max(mu, mu2)",),
    I.COSINE_IK: ("b <= a", "every 8th case has a = b"),
    I.SPH_NU: ("|r - r2| >= 0.05 max(r, r2)", "|nu - 2j| >= 0.1 for 2j >= 2m", "m <= n"),
    I.SPH_COR: ("|r - r2| >= 0.05 max(r, r2)", "m <= n"),
    I.PROLATE: ("m <= n",), I.BISPHERE: ("m <= n",),
    I.OBLATE: ("m <= n", "every 20th case puts theta2 on an endpoint"),
    I.DEGREE_ORTHO: ("m <= n, n2",), I.ORDER_ORTHO: ("m, m2 <= n",),
    I.SPH_ADD: ("1 <= m <= n",),
    I.HEINE: ("every 10th case has z - 1 in [1e-3, 1e-2]",),
    I.GEOM_ORACLE: ("|sigma - sigma2| >= 0.25", "toroidal: sigma in [0.2, 3], chi >= 1.05",
                    "system = index mod 3 (0 oblate, 1 bispherical, 2 toroidal)"),
}

_NEAR = {
    I.PROLATE: "every 10th case sets sigma2 = sigma (log singularity at theta = theta2)",
    I.OBLATE: "every 10th case sets sigma2 = sigma (log singularity at theta = theta2)",
    I.BISPHERE: "every 10th case sets sigma2 = sigma (log singularity at theta = theta2)",
    I.TOROIDAL: "every 10th case sets sigma2 = sigma (log singularity at psi = 0)",
}


def default_domain(ident):
    """Sampling box, guards and near-singular policy for an identity."""
    ident = IdentityId(str(ident))
    box = {}
    for k, (lo, hi) in _BOXES[ident].items():
        kind = "int" if k in _INTEGER_PARAMS else "real"
        box[k] = (kind, lo, hi)
    return ParamDomain(ident, box, _GUARDS.get(ident, ()), _NEAR.get(ident, ""))


def near_singular_tags(ident, params):
    """Tags describing designed coincidences in a parameter set."""
    ident = IdentityId(str(ident))
    if ident in (I.PROLATE, I.OBLATE, I.BISPHERE, I.TOROIDAL) and params["sigma"] == params["sigma2"]:
        return ("singular-quadrature",)
    return ()
