"""Constructive representation of integers by four ternary quadratic forms.

The package decides representability by x^2+2y^2+2z^2 and x^2+y^2+2z^2
exactly, constructs representations for the covered congruence classes of
x^2+y^2+3z^2 and x^2+y^2+7z^2, and ships an independent brute-force oracle
for auditing every claim.
"""

from .arith import crt, inv_mod, is_prime, jacobi, sqrt_mod_prime
from .cases import CaseProfile, PROFILES, select_case
from .descent import compose, cornacchia_prime, represent_binary
from .errors import (
    InternalError,
    NonCoprimeModuliError,
    NonResidueError,
    NotInvertibleError,
    NotRepresentableError,
    ResourceCapError,
    TernrepError,
)
from .factor import factorize, ord_p, squarefree_decompose
from .forms import (
    Eligibility,
    EligibilityVerdict,
    TernaryForm,
    eligibility,
    evaluate,
    lift_representation,
    reduce_to_core,
)
from .oracle import (
    ScanReport,
    ScanRow,
    brute_force_binary,
    brute_force_ternary,
    scan_compare,
)
from .pipeline import (
    Witness,
    build_witness,
    enumerate_point,
    find_q,
    solve_bh,
    solve_t,
    verify_witness,
    witness_problems,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "jacobi", "is_prime", "sqrt_mod_prime", "inv_mod", "crt",
    "factorize", "squarefree_decompose", "ord_p",
    "TernaryForm", "Eligibility", "EligibilityVerdict",
    "eligibility", "evaluate", "reduce_to_core", "lift_representation",
    "CaseProfile", "PROFILES", "select_case",
    "cornacchia_prime", "compose", "represent_binary",
    "brute_force_ternary", "brute_force_binary",
    "ScanRow", "ScanReport", "scan_compare",
    "Witness", "build_witness", "find_q", "solve_t", "solve_bh",
    "enumerate_point", "verify_witness", "witness_problems",
    "TernrepError", "NonResidueError", "NotInvertibleError",
    "NonCoprimeModuliError", "NotRepresentableError",
    "ResourceCapError", "InternalError",
]
