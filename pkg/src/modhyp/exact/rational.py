"""Helpers around :class:`fractions.Fraction`, the coefficient type everywhere."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: every coefficient in this package must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def format_rational(r) -> str:
    """Serialize as ``num/den`` (the denominator is always written)."""
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    if k == 2:
        r = isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / k)) if n < 2**1000 else _nth_root_newton(n, k)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    r = _nth_root_newton(n, k)
    return r if r**k == n else None


def _nth_root_newton(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def rational_root(r, k: int) -> Fraction | None:
    """Exact ``k``-th root of ``r`` if it is rational, else ``None``.

    For even ``k`` the positive root is returned.
    """
    if k <= 0:
        raise ValueError("root index must be positive")
    r = Fraction(r)
    num = _int_root(r.numerator, k)
    den = _int_root(r.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def rational_power(r, e) -> Fraction | None:
    """``r**e`` for rational ``e`` when the result is rational, else ``None``."""
    r, e = Fraction(r), Fraction(e)
    if r == 0:
        if e <= 0:
            raise ZeroDivisionError("0 to a non-positive power")
        return Fraction(0)
    root = rational_root(r, e.denominator)
    if root is None:
        return None
    if e.denominator % 2 == 0 and r < 0:
        return None
    return root**e.numerator
