"""Certificates that two hyperelliptic jacobians admit no nonzero homomorphism.

The pieces: exact polynomials (:mod:`.poly`), Galois identification
(:mod:`.galois`), permutation groups (:mod:`.perm`), F_2 modules (:mod:`.f2`),
p-adic evidence (:mod:`.padic`) and the orchestration in :mod:`.certify`.
"""

from .certify import (Certificate, Conclusion, GaloisAssertion, Hypothesis, Options, Status,
                      certify_asserted, certify_hom_zero, check_endo_trivial,
                      check_linear_disjointness)
from .cli import parse_poly
from .errors import (DegenerateInputError, DomainError, PolySyntaxError, PreconditionError,
                     ResourceLimitError, SimplicityUnknown)
from .f2 import (F2Module, MatF2, Niceness, SimplicityVerdict, classify_niceness, heart_module,
                 hom_module, simplicity)
from .galois import GaloisStatus, GaloisVerdict, disc_is_square, identify_sn_an, sample_cycle_types
from .padic import (NewtonPolygon, RamificationEvidence, bertrand_prime,
                    fields_nonisomorphic_evidence, newton_polygon, ord_p, ramification_evidence)
from .perm import (PermGroup, are_disjoint, construct_family, goursat_decompose, group_from_spec,
                   group_order, is_k_transitive)
from .poly import PolyRat, ddf_degrees, discriminant, exp_poly, resultant, trinomial

__version__ = "0.1.0"
