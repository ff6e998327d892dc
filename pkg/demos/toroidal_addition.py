"""Toroidal harmonics three ways.

Q_{-1/2}(chi) for two points in toroidal coordinates is computed directly,
by its addition series in products P_{n-1/2} Q_{n-1/2}, and its cosine
projections are recovered by quadrature.  Heine's expansion of
1/sqrt(z - x) closes the loop.

Run:  python demos/toroidal_addition.py
"""

import math

from legendre_integrals import (IdentityCase, IdentityId, addition_series, chi_with_gap,
                                evaluate_identity, heine_sum, legendre_q_real)

s1, s2, psi = 1.0, 2.0, math.pi
chi, gap = chi_with_gap("toroidal", s1, psi, s2, 0.0)
direct = complex(legendre_q_real(-0.5, 0, float(chi), zm1=float(gap))).real
series, terms = addition_series(IdentityId.TOROIDAL, dict(m=0, sigma=s1, sigma2=s2, psi=psi),
                                return_terms=True)
print(f"chi = {float(chi):.15f}")
print(f"direct Q_(-1/2)(chi)   = {direct:.15f}")
print(f"addition series        = {series.real:.15f}  ({terms} terms)")

# each Fourier mode of Q_{m-1/2}(chi(psi)) is a product of toroidal harmonics
print("\nFourier projections, quadrature vs closed form")
for n in range(4):
    rep = evaluate_identity(IdentityCase(IdentityId.TOROIDAL, dict(n=n, m=1, sigma=s1, sigma2=s2)))
    print(f"  n={n}: lhs {rep.lhs.real: .12e}  rhs {rep.rhs.real: .12e}  rel {rep.rel_error:.1e}")

# coincident radial coordinate: the integrand has a log singularity at psi = 0
rep = evaluate_identity(IdentityCase(IdentityId.TOROIDAL, dict(n=2, m=0, sigma=1.3, sigma2=1.3)))
print(f"\nsigma = sigma2 (log singularity declared): rel error {rep.rel_error:.1e}")

print("\nHeine: 1/sqrt(z - x) from Chebyshev modes")
for z, x in [(2.0, 0.0), (10.0, 1.0), (1.01, -0.5)]:
    print(f"  z={z:<5} x={x:<5} series {heine_sum(z, x):.15f}  exact {1 / math.sqrt(z - x):.15f}")
