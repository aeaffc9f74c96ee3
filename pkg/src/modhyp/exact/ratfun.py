"""Reduced rational functions in one variable."""

from __future__ import annotations

from fractions import Fraction

from .polynomial import Polynomial, _parse_expression, poly_gcd
from .rational import as_rational


class RationalFunction:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial([1])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        elif lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def of(cls, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls(value)
        return cls(Polynomial([as_rational(value)]))

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> RationalFunction:
        return cls.of(_parse_expression(text, var, allow_division=True))

    # -- arithmetic ---------------------------------------------------
    def _co(self, other):
        try:
            return RationalFunction.of(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k >= 0:
            return RationalFunction(self.num**k, self.den**k)
        return RationalFunction(self.den ** (-k), self.num ** (-k))

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # -- calculus / substitution --------------------------------------
    def derivative(self) -> RationalFunction:
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, value):
        if isinstance(value, (int, Fraction)):
            d = self.den(Fraction(value))
            if d == 0:
                raise ZeroDivisionError(f"pole at {value}")
            return self.num(Fraction(value)) / d
        return self.num(value) / self.den(value)

    def compose(self, inner: RationalFunction) -> RationalFunction:
        """Substitute ``x = inner`` (homogenized to keep polynomial arithmetic)."""
        inner = RationalFunction.of(inner)
        p, q = inner.num, inner.den
        n = max(self.num.degree, self.den.degree, 0)
        qpow = [Polynomial([1])]
        for _ in range(n):
            qpow.append(qpow[-1] * q)

        def hom(f: Polynomial) -> Polynomial:
            out = Polynomial()
            ppow = Polynomial([1])
            for k, c in enumerate(f.coeffs):
                if c:
                    out = out + ppow * qpow[n - k] * c
                ppow = ppow * p
            return out

        return RationalFunction(hom(self.num), hom(self.den))

    def format(self, var: str = "x") -> str:
        if self.den == Polynomial([1]):
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def ratfun_reduce(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical form of ``num/den``: coprime, monic denominator."""
    return RationalFunction(num, den)
