"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

from ._arith import mul_rational, to_integers
from .rational import as_rational


class Polynomial:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of x^i.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> Polynomial:
        out = cls([1])
        for r in roots:
            out = out * cls([-as_rational(r), 1])
        return out

    @classmethod
    def parse(cls, text: str, var: str | None = None) -> Polynomial:
        """Parse the text form, e.g. ``x^4+5*x^3+15*x^2+25*x+25``.

        Products, integer powers, parentheses and division by constants are
        accepted, so factored data like ``(x+6)^3*(x^2+13*x+49)`` parses too.
        """
        value = _parse_expression(text, var, allow_division=False)
        if not isinstance(value, Polynomial):
            value = cls.constant(value)
        return value

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            return Polynomial(c * a for a in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return Polynomial(mul_rational(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs) + 1
        if dq <= 0:
            return Polynomial(), self
        quot = [Fraction(0)] * dq
        lead = o.leading
        for i in range(dq - 1, -1, -1):
            c = rem[i + o.degree] / lead
            quot[i] = c
            if c:
                for j, oc in enumerate(o.coeffs):
                    rem[i + j] -= c * oc
        return Polynomial(quot), Polynomial(rem[: o.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # -- calculus and evaluation --------------------------------------
    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, value):
        """Horner evaluation; works for rationals, polynomials and series."""
        if not self.coeffs:
            return Fraction(0) if not hasattr(value, "coeffs") else value * 0
        acc = self.coeffs[-1]
        if hasattr(value, "coeffs"):
            acc = value * 0 + acc
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        return Polynomial(self(inner).coeffs) if self.coeffs else Polynomial()

    def reversed(self, degree: int | None = None) -> Polynomial:
        """``x^degree * p(1/x)``; ``degree`` defaults to ``self.degree``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return Polynomial(reversed(list(self.coeffs) + [0] * (d - self.degree)))

    # -- normalizations -----------------------------------------------
    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self * (1 / self.leading)

    def primitive_integer(self) -> tuple[Fraction, list[int]]:
        """Return ``(content, ints)`` with ``self == content * Polynomial(ints)``.

        ``ints`` has gcd 1 and positive leading coefficient.
        """
        if not self.coeffs:
            return Fraction(0), []
        ints, den = to_integers(self.coeffs)
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [i // g for i in ints]

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no valuation")

    # -- text form ----------------------------------------------------
    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


# -- gcd and friends --------------------------------------------------


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and any(rem):
        shift = len(rem) - 1 - db
        lr = rem[-1]
        rem = [lb * c for c in rem]
        for j, bj in enumerate(b):
            rem[shift + j] -= lr * bj
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _int_primitive(v: list[int]) -> list[int]:
    g = reduce(gcd, v)
    if v[-1] < 0:
        g = -g
    return [c // g for c in v]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd via the primitive remainder sequence over Z."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    _, ai = a.primitive_integer()
    _, bi = b.primitive_integer()
    if len(ai) < len(bi):
        ai, bi = bi, ai
    while bi and len(bi) > 1:
        r = _int_pseudo_rem(ai, bi)
        ai, bi = bi, (_int_primitive(r) if r else [])
    if bi:
        return Polynomial([1])
    return Polynomial(ai).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree factors with their multiplicities."""
    if p.degree < 1:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: Polynomial) -> Polynomial:
    out = Polynomial([1])
    for f, _ in squarefree_decomposition(p):
        out = out * f
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, by the rational root theorem."""
    if p.degree < 1:
        return []
    roots = []
    rest = p
    k = 0
    while rest[0] == 0:
        rest = Polynomial(rest.coeffs[1:])
        k += 1
    if k:
        roots.append((Fraction(0), k))
    for f, mult in squarefree_decomposition(rest):
        _, ints = f.primitive_integer()
        if len(ints) < 2:
            continue
        for q in _divisors(ints[-1]):
            for num in _divisors(ints[0]):
                for r in (Fraction(num, q), Fraction(-num, q)):
                    if r.denominator == q and f(r) == 0:
                        roots.append((r, mult))
    roots = sorted(set(roots))
    return roots


def inverse_mod(a: Polynomial, m: Polynomial) -> Polynomial:
    """Inverse of ``a`` modulo ``m`` (extended Euclid over Q)."""
    r0, r1 = m, a % m
    s0, s1 = Polynomial(), Polynomial([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ArithmeticError("not invertible modulo the given polynomial")
    return (s0 * (1 / r0.leading)) % m


# -- text parser ----------------------------------------------------------


def _parse_expression(text: str, var: str | None, allow_division: bool):
    """Evaluate a ``^``-power arithmetic expression over Polynomial/Fraction.

    Uses Python's own parser on the text with ``^`` mapped to ``**``; only
    numbers, one variable name, + - * / ** and parentheses are accepted.
    """
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial text {text!r}") from exc
    names = {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}
    if len(names) > 1:
        raise ValueError(f"more than one variable in {text!r}: {sorted(names)}")
    if var is not None and names and names != {var}:
        raise ValueError(f"expected variable {var!r} in {text!r}")

    from .ratfun import RationalFunction

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            return Polynomial.x()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Pow):
                if not isinstance(right, Fraction) or right.denominator != 1 or right < 0:
                    raise ValueError("exponents must be non-negative integers")
                return left ** int(right)
            if isinstance(node.op, ast.Div):
                if isinstance(right, Fraction):
                    if right == 0:
                        raise ZeroDivisionError("division by zero in polynomial text")
                    return left * (1 / right) if isinstance(left, Polynomial) else left / right
                if not allow_division:
                    raise ValueError("division by a polynomial in polynomial text")
                return RationalFunction.of(left) / RationalFunction.of(right)
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)
