"""Coordinate systems and the Legendre argument chi.

Each axisymmetric system reduces to cylindrical coordinates (R, z); for two
points chi = (R**2 + R'**2 + (z - z')**2) / (2 R R') and the reciprocal
distance has the Fourier-cosine expansion

    1/|x - x'| = (pi sqrt(R R'))**-1 sum_m eps_m cos(m dphi) Q_{m-1/2}(chi).

The per-system ``chi`` functions below use the closed forms in each system's
own coordinates; ``chi_cylindrical`` is the common reference used to test them.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError
from .legendre import legendre_q_table

__all__ = [
    "SYSTEMS", "CoordSystem", "ChiInput", "chi", "chi_cylindrical",
    "to_cartesian", "to_cylindrical", "recip_distance", "ordered_pair",
    "fourier_cosine_recip", "COORD_NAMES", "chi_with_gap",
]

SYSTEMS = ("spherical", "prolate-spheroidal", "oblate-spheroidal",
           "bispherical", "parabolic", "toroidal")

# coordinate names per system (third entry is always the azimuth phi)
COORD_NAMES = {
    "spherical": ("r", "theta"),
    "prolate-spheroidal": ("sigma", "theta"),
    "oblate-spheroidal": ("sigma", "theta"),
    "bispherical": ("sigma", "theta"),
    "parabolic": ("lam", "mu"),
    "toroidal": ("sigma", "psi"),
}


@dataclass(frozen=True)
class CoordSystem:
    tag: str
    a: float = 1.0

    def __post_init__(self):
        if self.tag not in SYSTEMS:
            raise DomainError(f"unknown coordinate system {self.tag!r}; expected one of {SYSTEMS}")
        if not self.a > 0:
            raise DomainError("scale a must be positive")


@dataclass(frozen=True)
class ChiInput:
    """Two points in one coordinate system.

    ``first`` and ``second`` map coordinate names (see ``COORD_NAMES``) to
    values; ``phi`` is optional and ignored by ``chi``.  For toroidal input
    only the difference psi - psi' enters chi.
    """

    system: CoordSystem
    first: dict = field(default_factory=dict)
    second: dict = field(default_factory=dict)


def ordered_pair(x, y):
    """Return (min, max) of two values; ties are allowed."""
    return (x, y) if x <= y else (y, x)


def _coords(system, point):
    names = COORD_NAMES[system.tag]
    try:
        return tuple(float(point[n]) for n in names)
    except KeyError as exc:
        raise DomainError(f"{system.tag} point needs coordinates {names}") from exc


def _check_positive(*vals):
    for v in vals:
        if not v > 0:
            raise DomainError("radial and hyperbolic coordinates must be positive")


def _nonzero(den):
    if not abs(den) > 1e-300:
        raise DomainError("degenerate geometry: chi denominator vanishes")
    return den


def chi(inp):
    """Legendre argument chi >= 1 for the pair of points in ``inp``."""
    sysm = inp.system
    u1, v1 = _coords(sysm, inp.first)
    u2, v2 = _coords(sysm, inp.second)
    t = sysm.tag
    if t == "spherical":
        r, th, rp, thp = u1, v1, u2, v2
        _check_positive(r, rp)
        den = _nonzero(2 * r * rp * math.sin(th) * math.sin(thp))
        return (r * r + rp * rp - 2 * r * rp * math.cos(th) * math.cos(thp)) / den
    if t == "prolate-spheroidal":
        s, th, sp_, thp = u1, v1, u2, v2
        _check_positive(s, sp_)
        den = _nonzero(2 * math.sinh(s) * math.sinh(sp_) * math.sin(th) * math.sin(thp))
        num = (math.cosh(s) ** 2 + math.cosh(sp_) ** 2 - math.sin(th) ** 2 - math.sin(thp) ** 2
               - 2 * math.cosh(s) * math.cosh(sp_) * math.cos(th) * math.cos(thp))
        return num / den
    if t == "oblate-spheroidal":
        s, th, sp_, thp = u1, v1, u2, v2
        den = _nonzero(2 * math.cosh(s) * math.cosh(sp_) * math.sin(th) * math.sin(thp))
        num = (math.sinh(s) ** 2 + math.sinh(sp_) ** 2 + math.sin(th) ** 2 + math.sin(thp) ** 2
               - 2 * math.sinh(s) * math.sinh(sp_) * math.cos(th) * math.cos(thp))
        return num / den
    if t == "bispherical":
        s, th, sp_, thp = u1, v1, u2, v2
        S, Sp, tau, taup = math.cosh(s), math.cosh(sp_), math.cos(th), math.cos(thp)
        st, stp = math.sin(th), math.sin(thp)
        den = _nonzero(2 * st * stp * (S - tau) * (Sp - taup))
        num = (st ** 2 * (Sp - taup) ** 2 + stp ** 2 * (S - tau) ** 2
               + ((Sp - taup) * math.sinh(s) - (S - tau) * math.sinh(sp_)) ** 2)
        return num / den
    if t == "parabolic":
        lam, mu, lamp, mup = u1, v1, u2, v2
        _check_positive(lam, mu, lamp, mup)
        num = (4 * lam ** 2 * mu ** 2 + 4 * lamp ** 2 * mup ** 2
               + (lam ** 2 - lamp ** 2 + mup ** 2 - mu ** 2) ** 2)
        return num / (8 * lam * lamp * mu * mup)
    # toroidal
    s, psi, sp_, psip = u1, v1, u2, v2
    _check_positive(s, sp_)
    return (1 / (math.tanh(s) * math.tanh(sp_))
            - math.cos(psi - psip) / (math.sinh(s) * math.sinh(sp_)))


# Differences of the separable factors, written so that nearby arguments do
# not cancel: f(a) - f(b) as a product of half-sum and half-difference terms.

def _dsin(a, b):
    return 2 * np.cos(0.5 * (a + b)) * np.sin(0.5 * (a - b))


def _dcos(a, b):
    return -2 * np.sin(0.5 * (a + b)) * np.sin(0.5 * (a - b))


def _dsinh(a, b):
    return 2 * np.cosh(0.5 * (a + b)) * np.sinh(0.5 * (a - b))


def _dcosh(a, b):
    return 2 * np.sinh(0.5 * (a + b)) * np.sinh(0.5 * (a - b))


def chi_with_gap(tag, u1, v1, u2, v2):
    """Vectorized chi and chi - 1 for a pair of points.

    ``u`` and ``v`` are the two meridian coordinates of ``COORD_NAMES[tag]``
    (arrays broadcast).  chi - 1 is formed as a sum of squares of
    cancellation-free differences, so it keeps full relative accuracy when the
    points nearly coincide; chi itself is 1 + (chi - 1).
    """
    u1, v1, u2, v2 = (np.asarray(t, dtype=float) for t in (u1, v1, u2, v2))
    with np.errstate(divide="ignore", invalid="ignore"):
        if tag == "toroidal":
            num = 2 * np.sinh(0.5 * (u1 - u2)) ** 2 + 2 * np.sin(0.5 * (v1 - v2)) ** 2
            gap = num / (np.sinh(u1) * np.sinh(u2))
        elif tag == "bispherical":
            s1, s2 = np.cosh(u1), np.cosh(u2)
            d1, d2 = s1 - np.cos(v1), s2 - np.cos(v2)
            st1, st2 = np.sin(v1), np.sin(v2)
            A = _dsin(v1, v2) * s2 - st2 * _dcosh(u1, u2) - np.sin(v1 - v2)
            B = np.sinh(u1 - u2) - _dcos(v2, v1) * np.sinh(u1) - np.cos(v1) * _dsinh(u1, u2)
            gap = (A * A + B * B) / (2 * st1 * st2 * d1 * d2)
        else:
            if tag == "spherical":
                R1, R2 = u1 * np.sin(v1), u2 * np.sin(v2)
                dR = (u1 - u2) * np.sin(v1) + u2 * _dsin(v1, v2)
                dz = (u1 - u2) * np.cos(v1) + u2 * _dcos(v1, v2)
            elif tag == "prolate-spheroidal":
                R1, R2 = np.sinh(u1) * np.sin(v1), np.sinh(u2) * np.sin(v2)
                dR = _dsinh(u1, u2) * np.sin(v1) + np.sinh(u2) * _dsin(v1, v2)
                dz = _dcosh(u1, u2) * np.cos(v1) + np.cosh(u2) * _dcos(v1, v2)
            elif tag == "oblate-spheroidal":
                R1, R2 = np.cosh(u1) * np.sin(v1), np.cosh(u2) * np.sin(v2)
                dR = _dcosh(u1, u2) * np.sin(v1) + np.cosh(u2) * _dsin(v1, v2)
                dz = _dsinh(u1, u2) * np.cos(v1) + np.sinh(u2) * _dcos(v1, v2)
            elif tag == "parabolic":
                R1, R2 = u1 * v1, u2 * v2
                dR = (u1 - u2) * v1 + u2 * (v1 - v2)
                dz = 0.5 * ((u1 - u2) * (u1 + u2) - (v1 - v2) * (v1 + v2))
            else:
                raise DomainError(f"unknown coordinate system {tag!r}")
            gap = (dR * dR + dz * dz) / (2 * R1 * R2)
    return 1.0 + gap, gap


def to_cylindrical(system, point):
    """(R, z) of a point, in units of the scale ``a``."""
    u, v = _coords(system, point)
    a = system.a
    t = system.tag
    if t == "spherical":
        return a * u * math.sin(v), a * u * math.cos(v)
    if t == "prolate-spheroidal":
        return a * math.sinh(u) * math.sin(v), a * math.cosh(u) * math.cos(v)
    if t == "oblate-spheroidal":
        return a * math.cosh(u) * math.sin(v), a * math.sinh(u) * math.cos(v)
    if t == "bispherical":
        d = math.cosh(u) - math.cos(v)
        return a * math.sin(v) / d, a * math.sinh(u) / d
    if t == "parabolic":
        return a * u * v, a * 0.5 * (u * u - v * v)
    d = math.cosh(u) - math.cos(v)
    return a * math.sinh(u) / d, a * math.sin(v) / d


def to_cartesian(system, point):
    """Cartesian coordinates of a point given by its curvilinear coordinates."""
    R, z = to_cylindrical(system, point)
    phi = float(point.get("phi", 0.0))
    return np.array([R * math.cos(phi), R * math.sin(phi), z])


def chi_cylindrical(system, first, second):
    """chi computed through the cylindrical reduction (reference form)."""
    R1, z1 = to_cylindrical(system, first)
    R2, z2 = to_cylindrical(system, second)
    den = _nonzero(2 * R1 * R2)
    return (R1 * R1 + R2 * R2 + (z1 - z2) ** 2) / den


def recip_distance(p, q):
    """1 / ||p - q|| for two 3-vectors."""
    d = float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))
    if d == 0.0:
        raise DomainError("coincident points")
    return 1.0 / d


def _prefactor(system, first, second):
    """The printed prefactor 1/(pi sqrt(R R')) of each Fourier-cosine form."""
    a = system.a
    t = system.tag
    u1, v1 = _coords(system, first)
    u2, v2 = _coords(system, second)
    if t == "toroidal":
        return (1 / (math.pi * a)) * math.sqrt(
            (math.cosh(u1) - math.cos(v1)) * (math.cosh(u2) - math.cos(v2))
            / (math.sinh(u1) * math.sinh(u2)))
    if t == "oblate-spheroidal":
        return 1 / (math.pi * a * math.sqrt(math.cosh(u1) * math.cosh(u2)
                                              * math.sin(v1) * math.sin(v2)))
    if t == "bispherical":
        return (math.sqrt((math.cosh(u1) - math.cos(v1)) * (math.cosh(u2) - math.cos(v2)))
                / (math.pi * a * math.sqrt(math.sin(v1) * math.sin(v2))))
    R1, _ = to_cylindrical(system, first)
    R2, _ = to_cylindrical(system, second)
    return 1 / (math.pi * math.sqrt(R1 * R2))


def fourier_cosine_recip(system, first, second, tol=1e-12, max_terms=100000):
    """Reciprocal distance from the azimuthal Fourier-cosine series in Q(chi).

    The series is truncated once the geometric tail bound, built from the
    large-degree decay Q_{m-1/2}(cosh eta) ~ e**(-m eta), falls below ``tol``
    relative to the partial sum.

    Returns
    -------
    value : float
    terms : int
    """
    c = chi(ChiInput(system, first, second))
    if c <= 1.0:
        raise DomainError("coincident points")
    eta = math.acosh(c)
    M = int(min(max_terms, math.ceil((math.log(1 / tol) + 5) / eta) + 2))
    q = legendre_q_table(-0.5, 0, M + 1, np.array([c]))[:, 0].real
    dphi = float(first.get("phi", 0.0)) - float(second.get("phi", 0.0))
    m = np.arange(M + 1)
    eps = np.where(m == 0, 1.0, 2.0)
    val = _prefactor(system, first, second) * float(np.sum(eps * np.cos(m * dphi) * q))
    return val, M + 1
