"""Exact arithmetic: Gaussian rationals, Laurent and univariate polynomials,
real algebraic numbers and number fields."""

from .algebraic import AlgebraicNumber, count_nonreal_roots, isolate_real_roots, real_roots
from .gaussian import Gaussian, conj, simplify, to_complex
from .lattice import hermite_normal_form, lattice_is_full
from .laurent import LaurentPoly, determinant, laurent_involute, laurent_mul, matrix_mul
from .numberfield import NFElement, NumberField, field_inverse
from .unipoly import (
    UniPoly,
    charpoly_faddeev,
    content,
    factor_integer,
    field_gcd,
    primitive,
    rational_roots,
    squarefree_decomposition,
    unipoly_gcd,
)

__all__ = [
    "AlgebraicNumber",
    "Gaussian",
    "LaurentPoly",
    "NFElement",
    "NumberField",
    "UniPoly",
    "charpoly_faddeev",
    "conj",
    "content",
    "count_nonreal_roots",
    "determinant",
    "factor_integer",
    "field_gcd",
    "field_inverse",
    "hermite_normal_form",
    "isolate_real_roots",
    "lattice_is_full",
    "laurent_involute",
    "laurent_mul",
    "matrix_mul",
    "primitive",
    "rational_roots",
    "real_roots",
    "simplify",
    "squarefree_decomposition",
    "to_complex",
    "unipoly_gcd",
]
