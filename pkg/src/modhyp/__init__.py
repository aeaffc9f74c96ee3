"""Exact q-series, Fuchsian lifting and modular-curve computations for the
algebraic hypergeometric transformations of levels 2 through 7."""

__version__ = "0.1.0"
