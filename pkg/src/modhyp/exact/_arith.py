"""Coefficient-vector kernels shared by polynomials and series.

Rational vectors are multiplied by clearing to a common denominator and
convolving the integer numerators; this keeps the inner loop on Python ints
instead of Fraction objects (each Fraction op costs a gcd).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

KARATSUBA_THRESHOLD = 64


def _school(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return out


def int_convolve(a: list[int], b: list[int]) -> list[int]:
    """Full product of two integer coefficient vectors."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KARATSUBA_THRESHOLD:
        return _school(a, b)
    n = max(len(a), len(b))
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = int_convolve(a0, b0)
    z2 = int_convolve(a1, b1)
    z1 = int_convolve(_add(a0, a1), _add(b0, b1))
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] += v
        z1[i] -= v
    for i, v in enumerate(z2):
        out[i + 2 * h] += v
        z1[i] -= v
    for i, v in enumerate(z1):
        if v:
            out[i + h] += v
    return out


def to_integers(coeffs) -> tuple[list[int], int]:
    """Write rational ``coeffs`` as ``ints / den`` with a single ``den``."""
    den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def mul_rational(a, b, n: int | None = None) -> list[Fraction]:
    """Product of rational coefficient vectors, optionally truncated to ``n``."""
    if n is not None:
        a, b = a[:n], b[:n]
    if not a or not b:
        return []
    ai, da = to_integers(a)
    bi, db = to_integers(b)
    prod = int_convolve(ai, bi)
    if n is not None:
        prod = prod[:n]
    den = da * db
    return [Fraction(c, den) if c else Fraction(0) for c in prod]
