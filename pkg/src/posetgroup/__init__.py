"""Partially ordered abelian groups over finite posets.

The free abelian group on a finite poset's elements, ordered by the cone
of combinations whose coefficient is positive at every maximal element of
their support. Provides exact arithmetic, constructive refinement and
interpolation, order units, and an exhaustive small-instance verifier.
"""

from .abelian import (GroupElement, basis, format_expr, from_coeffs,
                      parse_expr, scale, zero)
from .cone import (OrderUnitCertificate, canonical_order_unit, in_cone,
                   is_order_unit, leq, order_unit_bound, upper_bound)
from .errors import (CycleError, DuplicateElementError, EmptyPosetError,
                     ExpressionSyntaxError, HostMismatchError,
                     InternalInvariantViolation, NotInConeError,
                     NotInterpolableError, NotOrderUnitError, PosetGroupError,
                     SizeTooLargeError, SumMismatchError, UnknownElementError)
from .oracle import (Failure, Lcg, VerificationReport, brute_refine,
                     default_search_bounds, enumerate_cone_elements,
                     enumerate_posets, format_poset, reports_to_jsonl,
                     verify_theorems)
from .poset import Poset, build_poset
from .riesz import (IntRefineMode, PivotPattern, RefinementMatrix,
                    RefinementProblem, check_refinement, interpolate,
                    pivot_pattern, refine, refine_int, refine_nat)

__all__ = [
    "GroupElement", "basis", "format_expr", "from_coeffs", "parse_expr",
    "scale", "zero",
    "OrderUnitCertificate", "canonical_order_unit", "in_cone",
    "is_order_unit", "leq", "order_unit_bound", "upper_bound",
    "CycleError", "DuplicateElementError", "EmptyPosetError",
    "ExpressionSyntaxError", "HostMismatchError", "InternalInvariantViolation",
    "NotInConeError", "NotInterpolableError", "NotOrderUnitError",
    "PosetGroupError", "SizeTooLargeError", "SumMismatchError",
    "UnknownElementError",
    "Failure", "Lcg", "VerificationReport", "brute_refine",
    "default_search_bounds", "enumerate_cone_elements", "enumerate_posets",
    "format_poset", "reports_to_jsonl", "verify_theorems",
    "Poset", "build_poset",
    "IntRefineMode", "PivotPattern", "RefinementMatrix", "RefinementProblem",
    "check_refinement", "interpolate", "pivot_pattern", "refine",
    "refine_int", "refine_nat",
]

__version__ = "0.1.0"
