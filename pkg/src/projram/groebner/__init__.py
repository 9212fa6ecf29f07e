"""Groebner bases over F_p and zero-dimensional degree counting."""

from .core import (
    Budget,
    BudgetExceeded,
    GroebnerBasis,
    Ideal,
    NotZeroDimensionalError,
    buchberger,
    is_zero_dimensional,
    normal_form,
    quotient_dimension,
    s_polynomial,
    standard_monomials,
)
from .kernels import available as available_kernels, default_kernel_name

__all__ = [
    "Budget",
    "BudgetExceeded",
    "GroebnerBasis",
    "Ideal",
    "NotZeroDimensionalError",
    "available_kernels",
    "buchberger",
    "default_kernel_name",
    "is_zero_dimensional",
    "normal_form",
    "quotient_dimension",
    "s_polynomial",
    "standard_monomials",
]
