"""Verifiers for the generating-function identities of the trivariate q-Hahn family.

Each verifier returns an :class:`IdentityReport`.  The catalogue collects
them under stable ids together with their parameters, convergence
constraints and supported arithmetic.
"""

from .base import CheckMode, Constraint, IdentityReport, Verdict
from .catalogue import (BY_ID, CATALOGUE, IdentityInfo, SamplingExhausted, get_identity,
                        make_context, run_identity, sample_point)
from .classical import verify_chu_vandermonde, verify_heine
from .generating import (verify_cauchy_generating, verify_dgen, verify_euler_pair,
                         verify_extended_generating, verify_generating, verify_qbinomial_theorem,
                         verify_srivas)
from .rogers import (verify_extended_rogers, verify_extended_rogers_at_zero_s, verify_fxgen,
                     verify_rogers, verify_rogers_point)
from .srivastava_agarwal import (verify_asc_genfun, verify_csums, verify_dd1sums, verify_lums,
                                 verify_lums_collapse, verify_sa_corollaries,
                                 verify_srivastava_agarwal)
from .structural import (verify_kernel_identity, verify_prop_conds, verify_qbinomial_rules,
                         verify_qde_solutions, verify_reductions, verify_theta_eigen,
                         verify_theta_nilpotent)

__all__ = [
    "BY_ID", "CATALOGUE", "CheckMode", "Constraint", "IdentityInfo", "IdentityReport",
    "SamplingExhausted", "Verdict", "get_identity", "make_context", "run_identity", "sample_point",
    "verify_asc_genfun", "verify_cauchy_generating", "verify_chu_vandermonde", "verify_csums",
    "verify_dd1sums", "verify_dgen", "verify_euler_pair", "verify_extended_generating",
    "verify_extended_rogers", "verify_extended_rogers_at_zero_s", "verify_fxgen",
    "verify_generating", "verify_heine", "verify_kernel_identity", "verify_lums",
    "verify_lums_collapse", "verify_prop_conds", "verify_qbinomial_rules",
    "verify_qbinomial_theorem", "verify_qde_solutions", "verify_reductions", "verify_rogers",
    "verify_rogers_point", "verify_sa_corollaries", "verify_srivas", "verify_srivastava_agarwal",
    "verify_theta_eigen", "verify_theta_nilpotent",
]
