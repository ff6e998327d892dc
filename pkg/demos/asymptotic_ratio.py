"""How good are the leading large-degree terms?

For each kind, nu * |exact / leading - 1| is printed.  It settles to a
constant, the first-order coefficient.  For P on (1, inf) that constant is
-(mu^2 - 1/4) / (1 - exp(-2 xi)), which exceeds 5 in size at mu = 2,
xi = 0.5.  A bound |ratio - 1| <= 5/nu therefore cannot hold there for any
large nu.

Run:  python demos/asymptotic_ratio.py
"""

import math

from legendre_integrals import asymptotic_legendre, legendre_p_real, legendre_pq_imag, legendre_q_real


def exact(kind, nu, mu, xi):
    if kind == "P-real":
        return legendre_p_real(nu, mu, math.cosh(xi))
    if kind == "Q-real":
        return legendre_q_real(nu, mu, math.cosh(xi))
    P, Q = legendre_pq_imag(nu, mu, math.sinh(xi))
    return P if kind == "P-imag" else Q


nus = (20, 50, 100, 200)
print("kind    mu  xi   " + "  ".join(f"nu={n:<4d}" for n in nus))
for kind in ("P-real", "Q-real", "P-imag", "Q-imag"):
    for mu in (0, 2):
        for xi in (0.5, 2.0):
            row = []
            for nu in nus:
                est = complex(asymptotic_legendre(kind, nu, mu, xi).value)
                row.append(nu * abs(complex(exact(kind, nu, mu, xi)) / est - 1))
            print(f"{kind:7s} {mu:2d} {xi:4.1f}  " + "  ".join(f"{v:7.3f}" for v in row))

print("\nfirst-order coefficient for P-real, |mu^2 - 1/4| / (1 - exp(-2 xi)):")
for mu in (0, 1, 2):
    print("  mu=%d: " % mu + "  ".join(f"xi={xi}: {abs(mu * mu - 0.25) / (1 - math.exp(-2 * xi)):.3f}"
                                       for xi in (0.5, 1.0, 2.0)))
