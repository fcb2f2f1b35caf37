"""Exact linear algebra over Q and cyclotomic fields."""
from .cyclotomic import CyclotomicNumber
from .matrix import ExactMatrix, char_poly
from .ops import fixed_space, is_unipotent, matrix_order
from .polys import CyclotomicFactorization, cyclotomic_orders, cyclotomic_polynomial

__all__ = [
    "CyclotomicNumber",
    "ExactMatrix",
    "char_poly",
    "cyclotomic_orders",
    "cyclotomic_polynomial",
    "CyclotomicFactorization",
    "fixed_space",
    "is_unipotent",
    "matrix_order",
]
