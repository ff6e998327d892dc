"""Legendre-function integral identities and verification harness.

Special-function kernels, associated Legendre functions on and off the cut,
coordinate-system geometry, quadrature for finite, decaying and oscillatory
integrals, and an executable registry of the integral and addition-theorem
identities with a deterministic sweep harness.
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError, IntegrandError, PoleError
from .kernel import (bessel_i, bessel_ik_product, bessel_j, bessel_j_zeros, bessel_k,
                     ellipk_agm, gamma_ratio, gauss_2f1, hyp2f1_real)
from .legendre import (AsymptoticEstimate, asymptotic_legendre, chebyshev_t, ferrers_bounds,
                       ferrers_p, ferrers_p_normalized_table, ferrers_p_table, legendre_p_real,
                       legendre_p_table, legendre_poly, legendre_pq_imag, legendre_q_real,
                       legendre_q_table, pq_product_table)
from .geometry import (COORD_NAMES, SYSTEMS, ChiInput, CoordSystem, chi, chi_cylindrical,
                       chi_with_gap, fourier_cosine_recip, recip_distance, to_cartesian,
                       to_cylindrical)
from .quadrature import (BesselOscillator, CosineOscillator, QuadResult, SingularitySpec,
                         integrate_finite, integrate_semi_decaying, integrate_semi_oscillatory)
from .identities import (IdentityCase, IdentityId, IdentityReport, addition_series,
                         default_domain, evaluate_identity, heine_sum)
from .harness import SuiteReport, SweepConfig, parse_config, run_suite
