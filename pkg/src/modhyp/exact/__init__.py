"""Exact rational substrate: polynomials, rational functions, Laurent series."""

from .polynomial import (
    Polynomial,
    inverse_mod,
    poly_gcd,
    rational_roots,
    squarefree_decomposition,
    squarefree_part,
)
from .ratfun import RationalFunction, ratfun_reduce
from .rational import (
    Rational,
    as_rational,
    format_rational,
    parse_rational,
    rational_power,
    rational_root,
)
from .series import (
    DEFAULT_ORDER,
    LaurentSeries,
    NoRationalBranchError,
    SeriesError,
    laurent_sqrt,
    pow_unit,
    series_compose,
    series_div,
    series_mul,
    series_pow_rational,
)

__all__ = [
    "DEFAULT_ORDER",
    "LaurentSeries",
    "NoRationalBranchError",
    "Polynomial",
    "Rational",
    "RationalFunction",
    "SeriesError",
    "as_rational",
    "format_rational",
    "inverse_mod",
    "laurent_sqrt",
    "parse_rational",
    "poly_gcd",
    "pow_unit",
    "ratfun_reduce",
    "rational_power",
    "rational_root",
    "rational_roots",
    "series_compose",
    "series_div",
    "series_mul",
    "series_pow_rational",
    "squarefree_decomposition",
    "squarefree_part",
]
