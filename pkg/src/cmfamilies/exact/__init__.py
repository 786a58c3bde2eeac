"""Exact scalar, polynomial and linear-form arithmetic."""
from .cyclotomic import Cyclotomic, cyclotomic_arith, cyclotomic_polynomial, totient
from .linform import LinearForm, format_form, parse_form
from .poly import IntPolynomial, Polynomial, exact_quotient, poly_divides, trailing_degree

__all__ = [
    "Cyclotomic",
    "IntPolynomial",
    "LinearForm",
    "Polynomial",
    "cyclotomic_arith",
    "cyclotomic_polynomial",
    "exact_quotient",
    "format_form",
    "parse_form",
    "poly_divides",
    "totient",
    "trailing_degree",
]
