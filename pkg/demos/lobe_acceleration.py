"""Oscillatory half-line integrals by lobes.

The integral of J_0 over [0, inf) converges only conditionally; partial
integrals up to successive zeros of J_0 wander around the limit 1.  Averaging
neighbouring partial sums repeatedly removes the oscillation.  The same
engine then checks the inverse of the QJ integral, whose integrand decays
only algebraically.

Run:  python demos/lobe_acceleration.py
"""

import numpy as np

from legendre_integrals import (BesselOscillator, IdentityCase, IdentityId, bessel_j, bessel_j_zeros,
                                evaluate_identity, integrate_finite, integrate_semi_oscillatory)

zeros = bessel_j_zeros(0.0, 0.0, 12)
edges = np.concatenate([[0.0], zeros])
lobes = [integrate_finite(lambda x: bessel_j(0, x), a, b, tol=1e-13).value for a, b in zip(edges[:-1], edges[1:])]
sums = np.cumsum(lobes)
print("partial integrals to the k-th zero of J_0")
for k in (1, 2, 3, 6, 12):
    print(f"  k={k:2d}: {sums[k - 1]:.10f}")

avg = sums.copy()
for _ in range(8):
    avg = 0.5 * (avg[:-1] + avg[1:])
print(f"after 8 rounds of averaging: {avg[-1]:.12f}")

r = integrate_semi_oscillatory(lambda x: bessel_j(0, x), BesselOscillator(0.0, 1.0), tol=1e-12)
print(f"engine: {r.value:.14f}  (estimate {r.abs_error_estimate:.1e}, {r.evaluations} evaluations)")

print("\ninverse of the QJ integral, b-integral against J_nu(k b)")
for nu in (0.0, 1.5, 3.2):
    rep = evaluate_identity(IdentityCase(IdentityId.PRUDNIKOV_INV, dict(a=0.7, c=1.4, k=1.9, nu=nu)))
    print(f"  nu={nu}: lhs {rep.lhs.real:.12f}  rhs {rep.rhs.real:.12f}  rel {rep.rel_error:.1e}")
