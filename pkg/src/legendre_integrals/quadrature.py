"""Adaptive quadrature engines.

All integrands are called with a 1-D float array of abscissae and must return
an array of the same length (real or complex).  The finite-interval engine is
a globally adaptive 21-point Gauss-Kronrod scheme that refines many intervals
per sweep, so the integrand sees few, large vectorized calls.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import kernel
from .errors import DomainError, IntegrandError

__all__ = [
    "QuadResult", "SingularitySpec", "BesselOscillator", "CosineOscillator",
    "integrate_finite", "integrate_semi_decaying", "integrate_semi_oscillatory",
]

# 21-point Kronrod nodes on [-1, 1] (positive half, descending) with the
# embedded 10-point Gauss rule on the odd-indexed nodes; QUADPACK values.
_XK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0])
_WK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821])
_WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338])

# full 21-node layout: -x0..-x9, 0, x9..x0
_NODES = np.concatenate([-_XK[:-1], [0.0], _XK[-2::-1]])
_KW = np.concatenate([_WK[:-1], [_WK[-1]], _WK[-2::-1]])
_GW = np.zeros(21)
_GW[1:10:2] = _WG
_GW[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps


@dataclass
class QuadResult:
    """Outcome of a quadrature call."""

    value: complex
    abs_error_estimate: float
    evaluations: int
    converged: bool
    resabs: float = field(default=0.0, repr=False)


@dataclass(frozen=True)
class SingularitySpec:
    """Declared integrand singularities.

    ``kinds`` holds ``"log"`` or a float exponent alpha > -1 for each entry of
    ``locations``; an algebraic point behaves like ``|x - p|**alpha``.
    """

    locations: tuple = ()
    kinds: tuple = ()

    def __post_init__(self):
        if len(self.locations) != len(self.kinds):
            raise ValueError("locations and kinds must have equal length")
        for k in self.kinds:
            if k != "log" and not (isinstance(k, (int, float)) and k > -1):
                raise ValueError(f"bad singularity kind {k!r}")

    @classmethod
    def log(cls, *points):
        return cls(tuple(float(p) for p in points), ("log",) * len(points))

    @classmethod
    def algebraic(cls, point, alpha):
        return cls((float(point),), (float(alpha),))

    def merged(self, other):
        if other is None:
            return self
        return SingularitySpec(self.locations + other.locations, self.kinds + other.kinds)


def _power_for(kind):
    """Exponent p of the map x = l + h u**p that smooths an endpoint."""
    if kind == "log":
        return 3
    alpha = float(kind)
    if alpha == math.floor(alpha) and alpha >= 0:
        return 1
    return int(min(20, max(2, math.ceil(3.0 / (alpha + 1)))))


class _Piece:
    """Subinterval [l, r] with an optional power map smoothing one end."""

    __slots__ = ("l", "r", "side", "p")

    def __init__(self, l, r, side=0, p=1):
        self.l, self.r, self.side, self.p = l, r, side, p


def _split_pieces(a, b, sing):
    cuts = {a: None, b: None}
    if sing is not None:
        for loc, kind in zip(sing.locations, sing.kinds):
            if loc < a or loc > b:
                raise DomainError(f"singularity {loc} outside [{a}, {b}]")
            p = _power_for(kind)
            prev = cuts.get(loc)
            cuts[loc] = p if prev is None else max(prev, p)
    pts = sorted(cuts)
    pieces = []
    for l, r in zip(pts[:-1], pts[1:]):
        if r <= l:
            continue
        pl, pr = cuts[l] or 1, cuts[r] or 1
        if pl > 1 and pr > 1:
            m = 0.5 * (l + r)
            pieces.append(_Piece(l, m, -1, pl))
            pieces.append(_Piece(m, r, 1, pr))
        elif pl > 1:
            pieces.append(_Piece(l, r, -1, pl))
        elif pr > 1:
            pieces.append(_Piece(l, r, 1, pr))
        else:
            pieces.append(_Piece(l, r))
    return pieces


def _gk_eval(f, pieces, pid, lo, hi):
    """Kronrod value, error estimate and |f| integral for many intervals."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    u = mid[:, None] + half[:, None] * _NODES[None, :]
    x = np.empty_like(u)
    jac = np.empty_like(u)
    for k, pc in enumerate(pieces):
        sel = pid == k
        if not np.any(sel):
            continue
        uu = u[sel]
        h = pc.r - pc.l
        if pc.side == 0:
            x[sel] = pc.l + h * uu
            jac[sel] = h
        elif pc.side < 0:
            x[sel] = pc.l + h * uu ** pc.p
            jac[sel] = h * pc.p * uu ** (pc.p - 1)
        else:
            x[sel] = pc.r - h * uu ** pc.p
            jac[sel] = h * pc.p * uu ** (pc.p - 1)
    fx = np.asarray(f(x.ravel()))
    if fx.shape != (x.size,):
        fx = np.broadcast_to(fx, (x.size,))
    fx = fx.reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = np.argwhere(~np.isfinite(fx))[0]
        loc = float(x[tuple(bad)])
        raise IntegrandError(f"integrand is not finite at x = {loc!r}", location=loc)
    g = fx * jac
    kron = half * (g @ _KW)
    gauss = half * (g @ _GW)
    mean = kron / (2 * half)
    resabs = np.abs(half) * (np.abs(g) @ _KW)
    resasc = np.abs(half) * (np.abs(g - mean[:, None]) @ _KW)
    diff = np.abs(kron - gauss)
    err = np.where(resasc > 0, resasc * np.minimum(1.0, (200 * diff / np.where(resasc > 0, resasc, 1)) ** 1.5), diff)
    floor = 50 * _EPS * resabs
    err = np.maximum(err, floor)
    return kron, err, resabs


def _adaptive(f, pieces, tol, abs_tol, max_intervals, init_splits=1, mass_tol=0.0):
    """Globally adaptive GK21 over unit-parameter pieces.

    Returns the per-piece values, the total error, evaluations, flag, and the
    summed |f| integral.
    """
    n0 = len(pieces)
    pid = np.repeat(np.arange(n0), init_splits)
    edges = np.linspace(0.0, 1.0, init_splits + 1)
    lo = np.tile(edges[:-1], n0)
    hi = np.tile(edges[1:], n0)
    val, err, rab = _gk_eval(f, pieces, pid, lo, hi)
    evals = 21 * lo.size
    converged = False
    while True:
        total = val.sum()
        etot = err.sum()
        # round-off sets a floor no refinement can beat
        target = max(abs_tol, tol * abs(total), (50 * _EPS + mass_tol) * rab.sum())
        if etot <= target:
            converged = True
            break
        if lo.size >= max_intervals:
            break
        width = hi - lo
        # intervals below resolution cannot be refined further
        can = width > 1e3 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if not np.any(can):
            break
        order = np.argsort(-np.where(can, err, -1.0))
        # refine the worst intervals until they carry most of the excess
        need = etot - 0.5 * target
        csum = np.cumsum(err[order])
        nsel = int(np.searchsorted(csum, need) + 1)
        nsel = max(1, min(nsel, int(can.sum()), max_intervals - lo.size))
        sel = order[:nsel]
        keep = np.ones(lo.size, dtype=bool)
        keep[sel] = False
        m = 0.5 * (lo[sel] + hi[sel])
        nlo = np.concatenate([lo[sel], m])
        nhi = np.concatenate([m, hi[sel]])
        npid = np.concatenate([pid[sel], pid[sel]])
        nval, nerr, nrab = _gk_eval(f, pieces, npid, nlo, nhi)
        evals += 21 * nlo.size
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        pid = np.concatenate([pid[keep], npid])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        rab = np.concatenate([rab[keep], nrab])
    per_piece = np.zeros(n0, dtype=val.dtype)
    np.add.at(per_piece, pid, val)
    per_err = np.zeros(n0)
    np.add.at(per_err, pid, err)
    return per_piece, per_err, evals, converged, rab.sum()


def integrate_finite(f, a, b, tol=1e-10, sing=None, abs_tol=0.0, max_intervals=4000,
                     mass_tol=0.0):
    """Integrate ``f`` over [a, b] to relative tolerance ``tol``.

    Declared singularities split the interval; each singular endpoint is
    smoothed by a power substitution before adaptive refinement.

    Parameters
    ----------
    f : callable
        Vectorized integrand.
    a, b : float
        Finite limits with a < b.
    tol : float
        Relative tolerance; ``abs_tol`` is an absolute floor.
    sing : SingularitySpec, optional
        Points where f has a logarithmic or algebraic singularity.
    mass_tol : float
        Also accept an error below ``mass_tol`` times the integral of |f|;
        useful when the integral is small through cancellation.

    Returns
    -------
    QuadResult
    """
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise DomainError("need finite a < b")
    if tol <= 0:
        raise DomainError("tol must be positive")
    pieces = _split_pieces(float(a), float(b), sing)
    vals, errs, evals, ok, rab = _adaptive(f, pieces, tol, abs_tol, max_intervals, mass_tol=mass_tol)
    value = vals.sum()
    return QuadResult(value, float(errs.sum()), evals, ok, float(rab))


def integrate_semi_decaying(f, decay_scale, tol=1e-10, sing=None, a=0.0, max_chunks=200):
    """Integrate ``f`` over [a, infinity) for an exponentially decaying f.

    The half-line is cut into chunks of length ``4 * decay_scale``; chunks are
    added until one contributes less than ``tol / 10`` of the running total,
    after which the geometric tail bound is folded into the error estimate.
    """
    if decay_scale <= 0:
        raise DomainError("decay_scale must be positive")
    L = 4.0 * decay_scale
    total = 0.0
    err = 0.0
    mass = 0.0
    evals = 0
    ok = True
    x0 = float(a)
    tail = 0.0
    for i in range(max_chunks):
        s = _restrict(sing, x0, x0 + L)
        floor = 0.05 * tol * abs(total)
        r = _chunk(f, x0, x0 + L, tol, s, floor)
        total = total + r.value
        err += r.abs_error_estimate
        mass += r.resabs
        evals += r.evaluations
        ok = ok and r.converged
        x0 += L
        size = max(abs(r.value), r.resabs)
        if i > 0 and size <= 0.1 * tol * abs(total):
            # contributions shrink at least by exp(-4) per chunk
            q = math.exp(-4.0)
            tail = size * q / (1 - q)
            break
    else:
        ok = False
    return QuadResult(total, err + tail, evals, ok, mass + tail)


def _restrict(sing, l, r):
    if sing is None:
        return None
    keep = [(p, k) for p, k in zip(sing.locations, sing.kinds) if l <= p <= r]
    if not keep:
        return None
    return SingularitySpec(tuple(p for p, _ in keep), tuple(k for _, k in keep))


def _chunk(f, l, r, tol, sing, abs_tol):
    pieces = _split_pieces(l, r, sing)
    vals, errs, evals, ok, rab = _adaptive(f, pieces, tol, abs_tol, 4000, init_splits=4)
    return QuadResult(vals.sum(), float(errs.sum()), evals, ok, rab)


@dataclass(frozen=True)
class BesselOscillator:
    """Kernel J_nu(scale * x); zeros partition the half-line into lobes."""

    nu: float
    scale: float

    def zeros(self, x_start, count):
        z = kernel.bessel_j_zeros(self.nu, x_start * self.scale, count)
        return np.asarray(z) / self.scale

    @property
    def period(self):
        return math.pi / self.scale


@dataclass(frozen=True)
class CosineOscillator:
    """Kernel cos(k x); zeros at (j + 1/2) pi / k."""

    k: float

    def zeros(self, x_start, count):
        j0 = max(0, math.ceil(x_start * self.k / math.pi - 0.5))
        return (np.arange(j0, j0 + count) + 0.5) * math.pi / self.k

    @property
    def period(self):
        return math.pi / self.k


def _average(sums, levels):
    """Iterated neighbour averaging of a partial-sum sequence."""
    s = np.asarray(sums)
    rows = [s]
    for _ in range(levels):
        if s.size < 2:
            break
        s = 0.5 * (s[:-1] + s[1:])
        rows.append(s)
    return rows


def _accelerate(sums, levels, mode, ends):
    rows = _average(sums, levels)
    top = rows[-1]
    if mode == "average":
        if top.size >= 2:
            est = top[-1]
            err = abs(top[-1] - top[-2]) + abs(top[-1] - rows[-2][-1]) if len(rows) > 1 else abs(top[-1] - top[-2])
        else:
            est, err = top[-1], abs(top[-1] - sums[-1])
        return est, err
    # "richardson": after averaging, the sums approach the limit like
    # c1/x + c2/x**2; fit that model by least squares over the later half
    # of the sequence and compare fits of two orders
    drop = len(rows) - 1
    h = sum(_binomial_shift(1.0 / np.asarray(ends, dtype=float), drop)) * 0.5 ** drop
    y = top
    k = max(4, y.size // 2)
    h, y = h[-k:], y[-k:]
    ests = []
    for deg in (2, 3):
        A = np.vander(h, deg + 1, increasing=True)
        coef = np.linalg.lstsq(A, y, rcond=None)[0]
        ests.append(coef[0])
    return ests[-1], abs(ests[-1] - ests[-2])


def _binomial_shift(ends, drop):
    """Positions matching the averaged sums: binomially weighted endpoints."""
    ends = np.asarray(ends, dtype=float)
    n = ends.size - drop
    out = []
    for j in range(drop + 1):
        out.append(math.comb(drop, j) * ends[j:j + n])
    return out


def integrate_semi_oscillatory(f, oscillator, tol=1e-10, head=0.0, sing=None,
                               max_lobes=30, levels=12, mode="average", min_lobes=12):
    """Integrate ``f`` over [0, infinity) when f oscillates with a known kernel.

    The interval up to the first kernel zero past ``head`` is integrated
    directly (with any declared singularities); the remainder is cut at
    consecutive kernel zeros and the partial sums over these lobes are
    accelerated by iterated averaging.  ``mode="richardson"`` additionally
    extrapolates the averaged sums in 1/x, for integrands whose
    non-oscillating remainder decays algebraically.

    Parameters
    ----------
    f : callable
        Full vectorized integrand (kernel included).
    oscillator : BesselOscillator or CosineOscillator
    tol : float
        Relative tolerance of the accelerated limit.
    head : float
        Lobes start at the first kernel zero beyond this point.
    """
    if mode not in ("average", "richardson"):
        raise ValueError("mode must be 'average' or 'richardson'")
    zs = oscillator.zeros(max(head, 0.0) + 1e-12 * oscillator.period, max_lobes + 1)
    x0 = float(zs[0])
    h = integrate_finite(f, 0.0, x0, tol=0.1 * tol, sing=sing)
    evals = h.evaluations
    ok = h.converged
    err_quad = h.abs_error_estimate
    peak = 0.0
    done = 0
    lobes = []
    est, err = h.value, math.inf
    n = min(min_lobes, max_lobes)
    while True:
        if n > done:
            pieces = [_Piece(float(l), float(r)) for l, r in zip(zs[done:n], zs[done + 1:n + 1])]
            floor = 1e-3 * tol * max(abs(h.value), abs(est) if np.isfinite(est) else 0.0, 1e-300)
            vals, errs, ev, lok, rab = _adaptive(f, pieces, 0.1 * tol, floor, 200 * len(pieces), init_splits=1)
            lobes.extend(vals.tolist())
            peak = max(peak, float(np.max(np.abs(vals))))
            err_quad += float(errs.sum())
            evals += ev
            ok = ok and lok
            done = n
        sums = h.value + np.concatenate([[0.0], np.cumsum(lobes)])
        est, err = _accelerate(sums, levels, mode, zs[:done + 1])
        if err <= tol * abs(est) or done >= max_lobes:
            break
        n = min(max_lobes, done + 6)
    converged = bool(ok and err <= tol * max(abs(est), 1e-300))
    # magnitude scale: the head mass plus the largest lobe
    return QuadResult(est, float(err + err_quad), evals, converged, h.resabs + peak)
