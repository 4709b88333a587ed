"""Gröbner bases, Hilbert data, ideal operations and point counting."""

from .core import (
    GroebnerResult,
    groebner_basis,
    hilbert_data,
    ideal_containment,
    ideal_equal,
    ideal_intersection,
    ideal_membership,
    ideal_quotient,
    ideal_sum,
    eliminate,
    jacobian_ideal,
    normal_form,
)
from .points import SeedDisagreement, distinct_point_count, zero_dim_data
from .engine import Budget, GroebnerCapExceeded
from .hilbert import HilbertData, hilbert_numerator
from .cache import GroebnerCache

__all__ = [
    "Budget",
    "GroebnerCache",
    "GroebnerCapExceeded",
    "GroebnerResult",
    "HilbertData",
    "SeedDisagreement",
    "distinct_point_count",
    "eliminate",
    "groebner_basis",
    "hilbert_data",
    "hilbert_numerator",
    "ideal_containment",
    "ideal_equal",
    "ideal_intersection",
    "ideal_membership",
    "ideal_quotient",
    "ideal_sum",
    "jacobian_ideal",
    "normal_form",
    "zero_dim_data",
]
