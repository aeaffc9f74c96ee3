"""Truncated Laurent series with exact rational coefficients.

A series ``x^v * (c_0 + c_1 x + ...) + O(x^prec)`` stores ``v``, the
coefficients below ``prec`` and the absolute truncation order ``prec``.
Precision only ever shrinks: every operation returns the order it can
actually guarantee from its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from ._arith import mul_rational
from .polynomial import Polynomial
from .rational import as_rational, rational_root

DEFAULT_ORDER = 64


class SeriesError(ValueError):
    """Raised for operations that the truncated model cannot perform."""


class NoRationalBranchError(SeriesError):
    """A square root has no branch with rational leading coefficient."""


class LaurentSeries:
    __slots__ = ("valuation", "coeffs", "prec")

    def __init__(self, coeffs, prec: int, valuation: int = 0):
        cs = [as_rational(c) for c in coeffs]
        cs = cs[: max(prec - valuation, 0)]
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        cs = cs[k:]
        valuation += k
        # Trailing zeros are dropped so that equality is structural.
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            valuation = prec
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, prec: int = DEFAULT_ORDER) -> LaurentSeries:
        return cls([c], prec)

    @classmethod
    def monomial(cls, k: int, prec: int, c=1) -> LaurentSeries:
        return cls([c], prec, valuation=k)

    @classmethod
    def variable(cls, prec: int = DEFAULT_ORDER) -> LaurentSeries:
        return cls.monomial(1, prec)

    @classmethod
    def from_polynomial(cls, p: Polynomial, prec: int, shift: int = 0) -> LaurentSeries:
        """``x^shift * p(x)`` truncated at ``prec``."""
        return cls(p.coeffs, prec, valuation=shift)

    @classmethod
    def from_ratfun(cls, f, prec: int) -> LaurentSeries:
        """Expansion of a rational function about 0 (poles allowed)."""
        den = f.den
        v = den.valuation()
        den_series = cls.from_polynomial(Polynomial(den.coeffs[v:]), prec + 2 * v, shift=v)
        return cls.from_polynomial(f.num, prec + v) / den_series

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise SeriesError("series is zero to its truncation order")
        return self.coeffs[0]

    @property
    def relative_precision(self) -> int:
        return self.prec - self.valuation

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.prec:
            raise IndexError(f"coefficient of x^{k} is beyond the truncation order {self.prec}")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def dense(self, start: int, stop: int) -> list[Fraction]:
        """Coefficients of x^start .. x^(stop-1)."""
        return [self[k] for k in range(start, stop)]

    def truncate(self, prec: int) -> LaurentSeries:
        if prec > self.prec:
            raise SeriesError("truncation cannot extend precision")
        return LaurentSeries(self.coeffs, prec, self.valuation)

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by x^k."""
        return LaurentSeries(self.coeffs, self.prec + k, self.valuation + k)

    def first_mismatch(self, other: LaurentSeries, order: int):
        """First power below ``order`` where the two series differ, or None."""
        if order > min(self.prec, other.prec):
            raise SeriesError(
                f"cannot compare to order {order}: precisions are {self.prec}, {other.prec}"
            )
        start = min(self.valuation, other.valuation)
        for k in range(start, order):
            a, b = self[k], other[k]
            if a != b:
                return k, a, b
        return None

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self.coeffs, self.prec) == (
            other.valuation,
            other.coeffs,
            other.prec,
        )

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.prec))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:6]):
            terms.append(f"({c})*x^{self.valuation + i}")
        body = " + ".join(terms) if terms else "0"
        return f"LaurentSeries({body} + O(x^{self.prec}))"

    # -- ring operations ----------------------------------------------
    def _lift(self, other) -> LaurentSeries | None:
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentSeries([other], max(self.prec, 1))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        v = min(self.valuation, o.valuation)
        return LaurentSeries([self[k] + o[k] for k in range(v, prec)], prec, v)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.prec, self.valuation)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if c == 0:
                return LaurentSeries([], self.prec, self.valuation)
            return LaurentSeries([c * a for a in self.coeffs], self.prec, self.valuation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_div(self, other)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return series_div(o, self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("use series_pow_rational for non-integer exponents")
        if k < 0:
            return series_div(LaurentSeries([1], self.relative_precision), self ** (-k))
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result if result is not None else LaurentSeries([1], self.relative_precision)

    def derivative(self) -> LaurentSeries:
        return LaurentSeries(
            [(self.valuation + i) * c for i, c in enumerate(self.coeffs)],
            self.prec - 1,
            self.valuation - 1,
        )

    def substitute_power(self, m: int) -> LaurentSeries:
        """``f(x^m)`` for a positive integer ``m``."""
        if m < 1:
            raise ValueError("power substitution needs m >= 1")
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * m + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return LaurentSeries(out, self.prec * m, self.valuation * m)


# -- module-level operations ---------------------------------------------


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    prec = min(a.valuation + b.prec, b.valuation + a.prec)
    v = a.valuation + b.valuation
    n = prec - v
    if n <= 0 or a.is_zero() or b.is_zero():
        return LaurentSeries([], prec, v)
    return LaurentSeries(mul_rational(list(a.coeffs), list(b.coeffs), n), prec, v)


def _inverse_coeffs(b: list[Fraction], n: int) -> list[Fraction]:
    """First ``n`` coefficients of 1/b for b[0] != 0 (Newton iteration)."""
    g = [1 / b[0]]
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = mul_rational(b[:k], g, k)
        e = [-c for c in e] + [Fraction(0)] * (k - len(e))
        e[0] += 2
        g = mul_rational(g, e, k)
    return g[:n]


def series_div(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Quotient ``a / b``; ``b`` must be nonzero to its truncation order."""
    if b.is_zero():
        raise ZeroDivisionError("division by a series that is zero to its truncation order")
    rel = min(a.relative_precision, b.relative_precision)
    v = a.valuation - b.valuation
    if a.is_zero():
        return LaurentSeries([], a.prec - b.valuation, a.prec - b.valuation)
    inv = _inverse_coeffs(list(b.coeffs) + [Fraction(0)] * max(0, rel - len(b.coeffs)), rel)
    return LaurentSeries(mul_rational(list(a.coeffs), inv, rel), v + rel, v)


def series_compose(outer: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    """``outer(inner(x))`` for outer analytic at 0 and inner vanishing at 0."""
    if outer.valuation < 0 and not outer.is_zero():
        raise SeriesError("outer series must have non-negative valuation")
    if inner.is_zero():
        raise SeriesError("inner series is zero to its truncation order")
    v = inner.valuation
    if v <= 0:
        raise SeriesError("inner series must have valuation >= 1 for composition")
    rel = inner.prec - v
    prec = v * outer.prec
    ks = [outer.valuation + i for i, c in enumerate(outer.coeffs) if c and outer.valuation + i >= 1]
    if ks:
        prec = min(prec, ks[0] * v + rel)
    top = min(outer.prec - 1, ceil(prec / v))
    g = inner.dense(0, prec)
    acc = [outer[top]] if top >= 0 else []
    for k in range(top - 1, -1, -1):
        acc = mul_rational(acc, g, prec)
        if not acc:
            acc = [Fraction(0)]
        acc[0] += outer[k] if k >= outer.valuation else 0
    return LaurentSeries(acc, prec)


def series_pow_rational(u: LaurentSeries, e) -> LaurentSeries:
    """``u**e`` for a unit ``u = 1 + O(x)`` and rational ``e``."""
    e = as_rational(e)
    if u.is_zero() or u.valuation != 0 or u.leading != 1:
        raise SeriesError("series_pow_rational needs valuation 0 and constant term exactly 1")
    n = u.prec
    uc = u.dense(0, n)
    w = [Fraction(0)] * n
    w[0] = Fraction(1)
    ep1 = e + 1
    for m in range(1, n):
        s = Fraction(0)
        for k in range(1, m + 1):
            if uc[k]:
                s += (ep1 * k - m) * uc[k] * w[m - k]
        w[m] = s / m
    return LaurentSeries(w, n)


def pow_unit(u: LaurentSeries, e) -> LaurentSeries:
    """``u**e`` for ``u`` with valuation 0 whose leading coefficient has a
    rational ``e``-th power (the constant is split off first)."""
    from .rational import rational_power

    e = as_rational(e)
    if u.valuation != 0:
        raise SeriesError("pow_unit needs valuation 0")
    c = u.leading
    ce = rational_power(c, e)
    if ce is None:
        raise NoRationalBranchError(f"({c})^({e}) is not rational")
    return series_pow_rational(u * (1 / c), e) * ce


def laurent_sqrt(a: LaurentSeries) -> LaurentSeries:
    """Square root with positive rational leading coefficient."""
    if a.is_zero():
        raise NoRationalBranchError("square root of a series that is zero to order")
    if a.valuation % 2:
        raise NoRationalBranchError(f"odd valuation {a.valuation}")
    r = rational_root(a.leading, 2)
    if r is None or a.leading < 0:
        raise NoRationalBranchError(f"leading coefficient {a.leading} is not a rational square")
    unit = a.shift(-a.valuation) * (1 / a.leading)
    return (series_pow_rational(unit, Fraction(1, 2)) * r).shift(a.valuation // 2)
