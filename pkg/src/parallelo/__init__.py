"""Exact counting of visible lattice points in clean lattice parallelograms.

A lattice point is visible when the segment from the origin to it contains
no other lattice point, i.e. its coordinates are coprime.  This package
counts visible points inside clean parallelograms (no boundary lattice
points except corners), always through the canonical form spanned by (1, 0)
and (a, n): two independent counting routes cross-validate each other, a
unimodular reduction carries arbitrary primitive bases onto the canonical
family, and experiment drivers sweep slope profiles, conjecture bounds, and
density limits.  All counting arithmetic is exact.
"""

from fractions import Fraction as Rational

from .exact_math import (
    SieveTables,
    build_sieves,
    ceil_div,
    egcd,
    floor_div,
    frac,
    gcd,
    legendre_totient,
    mod_inverse,
    squarefree_divisors,
    sum_fractions,
)
from .lattice import (
    DegenerateAreaError,
    LatticePoint,
    NotPrimitiveError,
    Parallelogram,
    ReductionResult,
    UnimodularMap,
    apply_map,
    brute_count_interior,
    interior_points,
    is_visible,
    reduce_to_canonical,
    verify_clean,
)
from .visible_count import (
    CountBreakdown,
    ErrorTermReport,
    closed_form_special,
    count_column,
    count_direct,
    count_formula,
    count_mobius_ratio,
    count_visible,
    double_sum_bound,
    gcd_identity_check,
    inverse_partner,
    parity_upper_bound,
)
from .experiments import (
    ProfileRecord,
    RhoRecord,
    ScanReport,
    VISIBLE_DENSITY,
    conjecture_scan,
    discrepancy,
    golden_rho,
    parse_rho,
    phi_mean,
    profile,
    rho_sequence,
    square_density,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "SieveTables", "build_sieves", "ceil_div", "egcd", "floor_div", "frac",
    "gcd", "legendre_totient", "mod_inverse", "squarefree_divisors",
    "sum_fractions",
    "DegenerateAreaError", "LatticePoint", "NotPrimitiveError",
    "Parallelogram", "ReductionResult", "UnimodularMap", "apply_map",
    "brute_count_interior", "interior_points", "is_visible",
    "reduce_to_canonical", "verify_clean",
    "CountBreakdown", "ErrorTermReport", "closed_form_special",
    "count_column", "count_direct", "count_formula", "count_mobius_ratio",
    "count_visible", "double_sum_bound", "gcd_identity_check",
    "inverse_partner", "parity_upper_bound",
    "ProfileRecord", "RhoRecord", "ScanReport", "VISIBLE_DENSITY",
    "conjecture_scan", "discrepancy", "golden_rho", "parse_rho", "phi_mean",
    "profile", "rho_sequence", "square_density",
    "__version__",
]
