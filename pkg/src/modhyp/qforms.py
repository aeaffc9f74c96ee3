"""q-expansions of eta products, Hauptmoduln and j, plus the registry of
eta-product identities checked coefficient by coefficient.

A :class:`QExpansion` is ``q^r * u(q)`` with ``r`` rational and ``u`` a
power series normalized to a nonzero constant term. Orders quoted by the
verifiers count terms of ``u``, i.e. they are relative to the leading power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from . import data
from .exact import (
    LaurentSeries,
    NoRationalBranchError,
    Polynomial,
    RationalFunction,
    as_rational,
    laurent_sqrt,
    rational_power,
    series_compose,
    series_pow_rational,
)
from .fuchsian import GUARD, GaussParams, gauss_series, h_series
from .report import IdentityReport, compare_series, failed


@dataclass(frozen=True)
class EtaProduct:
    """``constant * prod eta(k tau)^e`` over ``factors = ((k, e), ...)``."""

    constant: Fraction
    factors: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        merged: dict[int, Fraction] = {}
        for k, e in self.factors:
            if int(k) != k or k < 1:
                raise ValueError(f"eta level must be a positive integer, got {k}")
            merged[int(k)] = merged.get(int(k), Fraction(0)) + as_rational(e)
        factors = tuple((k, e) for k, e in sorted(merged.items()) if e != 0)
        object.__setattr__(self, "constant", as_rational(self.constant))
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_spec(cls, spec: data.EtaSpec) -> EtaProduct:
        return cls(spec[0], spec[1])

    @classmethod
    def parse(cls, text: str) -> EtaProduct:
        """Fine's bracket notation, e.g. ``72*[2][6]^5/[1]^5[3]`` or ``[1]^(5/2)``."""
        import re

        text = text.replace(" ", "")
        num, _, den = text.partition("/[")
        if _:
            den = "[" + den
        m = re.match(r"^(\d+)\*?", num)
        constant = Fraction(1)
        if m and not num.startswith("["):
            constant = Fraction(int(m.group(1)))
            num = num[m.end():]
        factors = []
        pat = re.compile(r"\[(\d+)\](?:\^\(?(-?\d+(?:/\d+)?)\)?)?")
        for part, sign in ((num, 1), (den, -1)):
            pos = 0
            while pos < len(part):
                mm = pat.match(part, pos)
                if not mm:
                    raise ValueError(f"cannot parse eta product {text!r}")
                factors.append((int(mm.group(1)), sign * Fraction(mm.group(2) or 1)))
                pos = mm.end()
        return cls(constant, tuple(factors))

    @property
    def q_exponent(self) -> Fraction:
        return sum((k * e for k, e in self.factors), Fraction(0)) / 24

    @property
    def weight(self) -> Fraction:
        return sum((e for _, e in self.factors), Fraction(0)) / 2

    def __mul__(self, other: EtaProduct) -> EtaProduct:
        return EtaProduct(self.constant * other.constant, self.factors + other.factors)

    def __pow__(self, e) -> EtaProduct:
        e = as_rational(e)
        c = rational_power(self.constant, e)
        if c is None:
            raise NoRationalBranchError(f"({self.constant})^({e}) is not rational")
        return EtaProduct(c, tuple((k, x * e) for k, x in self.factors))

    def format(self) -> str:
        def part(fs):
            return "".join(f"[{k}]" if e == 1 else f"[{k}]^{e}" for k, e in fs)

        num = part([(k, e) for k, e in self.factors if e > 0])
        den = part([(k, -e) for k, e in self.factors if e < 0])
        head = "" if self.constant == 1 else f"{self.constant}*"
        body = (num or "1") + (f"/{den}" if den else "")
        return head + body


@dataclass(frozen=True)
class QExpansion:
    """``q^q_exponent * unit`` with ``unit`` a power series (valuation 0)."""

    q_exponent: Fraction
    unit: LaurentSeries

    def __post_init__(self):
        u = self.unit
        r = as_rational(self.q_exponent)
        if u.valuation != 0 and not u.is_zero():
            r += u.valuation
            u = u.shift(-u.valuation)
        object.__setattr__(self, "q_exponent", r)
        object.__setattr__(self, "unit", u)

    @classmethod
    def from_laurent(cls, s: LaurentSeries) -> QExpansion:
        return cls(Fraction(0), s)

    @property
    def order(self) -> int:
        """Number of known coefficients of the unit part."""
        return self.unit.prec

    @property
    def leading(self) -> Fraction:
        return self.unit.leading

    def coefficient(self, power) -> Fraction:
        k = as_rational(power) - self.q_exponent
        if k.denominator != 1:
            return Fraction(0)
        return self.unit[int(k)] if k >= 0 else Fraction(0)

    def as_laurent(self) -> LaurentSeries:
        if self.q_exponent.denominator != 1:
            raise ValueError(f"q^{self.q_exponent} is not an integral power")
        return self.unit.shift(int(self.q_exponent))

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return QExpansion(self.q_exponent + other.q_exponent, self.unit * other.unit)
        return QExpansion(self.q_exponent, self.unit * as_rational(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QExpansion):
            return QExpansion(self.q_exponent - other.q_exponent, self.unit / other.unit)
        return QExpansion(self.q_exponent, self.unit * (1 / as_rational(other)))

    def __pow__(self, e) -> QExpansion:
        """Power with the branch fixed by a positive rational leading constant."""
        e = as_rational(e)
        c = self.unit.leading
        ce = rational_power(c, e)
        if ce is None or (e.denominator > 1 and c < 0):
            raise NoRationalBranchError(f"({c})^({e}) has no rational branch")
        return QExpansion(self.q_exponent * e, series_pow_rational(self.unit * (1 / c), e) * ce)

    def substitute_power(self, m: int) -> QExpansion:
        """The expansion in q^m."""
        return QExpansion(self.q_exponent * m, self.unit.substitute_power(m))

    def to_json(self) -> dict:
        from .exact import format_rational

        base = floor(self.q_exponent)
        frac = self.q_exponent - base
        return {
            "q_exponent": format_rational(frac),
            "valuation": base,
            "coeffs": [format_rational(c) for c in self.unit.dense(0, self.unit.prec)],
        }


def evaluate(f, x: QExpansion) -> QExpansion:
    """A polynomial or rational function of an integral-power q-series."""
    s = x.as_laurent()
    return QExpansion.from_laurent(f(s))


# -- eta ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pentagonal(order: int) -> tuple[Fraction, ...]:
    c = [Fraction(0)] * order
    m = 0
    while True:
        hit = False
        for j in ((m, -m) if m else (0,)):
            p = j * (3 * j - 1) // 2
            if p < order:
                c[p] += -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        m += 1
    return tuple(c)


def eta_unit(k: int, order: int) -> LaurentSeries:
    """prod_{n>=1} (1 - q^(k n)) below q^order (Euler's pentagonal series)."""
    if order < 1 or k < 1:
        raise ValueError("need k >= 1 and order >= 1")
    base = _pentagonal(-(-order // k))
    out = [Fraction(0)] * order
    for i, c in enumerate(base):
        if i * k < order:
            out[i * k] = c
    return LaurentSeries(out, order)


@lru_cache(maxsize=None)
def _eta_power(k: int, e: Fraction, order: int) -> LaurentSeries:
    return series_pow_rational(eta_unit(k, order), e)


def eta_product_qexp(p: EtaProduct, order: int) -> QExpansion:
    if order < 1:
        raise ValueError("order must be positive")
    unit = LaurentSeries.constant(p.constant, order)
    for k, e in p.factors:
        unit = unit * _eta_power(k, e, order)
    return QExpansion(p.q_exponent, unit)


# -- Hauptmoduln and j ----------------------------------------------------------


@dataclass(frozen=True)
class HauptmodulRecord:
    level: int
    eta_product: EtaProduct
    kappa: Fraction | None
    covering_num: Polynomial | None
    covering_den: Polynomial | None
    chain: tuple[int, str] | None


def hauptmodul_record(N: int) -> HauptmodulRecord:
    eta = EtaProduct.from_spec(data.HAUPTMODUL_ETA[N])
    if N in data.COVERINGS:
        P, Q = data.covering(N)
        return HauptmodulRecord(N, eta, data.KAPPA[N], P, Q, None)
    link = next((lo, expr) for hi, lo, expr in data.CHAINS if hi == N)
    return HauptmodulRecord(N, eta, data.KAPPA[N], None, None, link)


HAUPTMODUL_NAMES = tuple(f"x{N}" for N in sorted(data.HAUPTMODUL_ETA)) + ("t36",)


def hauptmodul_qexp(N, order: int) -> QExpansion:
    """x_N for a tabulated level, or ``"t36"``."""
    if N == "t36":
        return eta_product_qexp(EtaProduct.from_spec(data.T36_ETA), order)
    if isinstance(N, str) and N.startswith("x"):
        N = int(N[1:])
    if N not in data.HAUPTMODUL_ETA:
        raise KeyError(f"no Hauptmodul tabulated for level {N}")
    return eta_product_qexp(EtaProduct.from_spec(data.HAUPTMODUL_ETA[N]), order)


@lru_cache(maxsize=None)
def _j(order: int) -> QExpansion:
    x2 = hauptmodul_qexp(2, order)
    P, Q = data.covering(2)
    return evaluate(RationalFunction(P, Q), x2)


def j_qexp(order: int) -> QExpansion:
    """j = (x2 + 16)^3 / x2; ``order`` coefficients from q^-1."""
    return _j(order)


def j_from_eisenstein(order: int) -> QExpansion:
    """Independent j = E4^3 / Delta with E4 = 1 + 240 sum sigma_3(n) q^n."""
    e4 = [Fraction(1)] + [Fraction(240 * sum(d**3 for d in range(1, n + 1) if n % d == 0)) for n in range(1, order)]
    e4s = LaurentSeries(e4, order)
    delta_unit = series_pow_rational(eta_unit(1, order), 24)
    return QExpansion(Fraction(-1), (e4s**3) / delta_unit)


# -- comparisons -----------------------------------------------------------------


def compare_qexp(name: str, lhs: QExpansion, rhs: QExpansion, order: int) -> IdentityReport:
    if lhs.q_exponent != rhs.q_exponent:
        return failed(
            name, order, min(lhs.q_exponent, rhs.q_exponent),
            lhs.coefficient(min(lhs.q_exponent, rhs.q_exponent)),
            rhs.coefficient(min(lhs.q_exponent, rhs.q_exponent)),
            note="leading q-powers differ",
        )
    rep = compare_series(name, lhs.unit, rhs.unit, order)
    if rep.first_mismatch is None:
        return rep
    m = rep.first_mismatch
    return failed(name, order, m.power + lhs.q_exponent, m.lhs, m.rhs)


def verify_covering(N: int, order: int) -> IdentityReport:
    """P_N(x_N) / Q_N(x_N) = j as q-series."""
    if N not in data.COVERINGS:
        raise KeyError(f"level {N} has no direct covering formula")
    x = hauptmodul_qexp(N, order + GUARD)
    P, Q = data.covering(N)
    lhs = evaluate(RationalFunction(P, Q), x)
    return compare_qexp(f"covering_x{N}", lhs, j_qexp(order + GUARD), order)


def verify_j_oracle(order: int) -> IdentityReport:
    return compare_qexp("j_eisenstein", j_qexp(order + GUARD), j_from_eisenstein(order + GUARD), order)


# -- identity registry ---------------------------------------------------------------


def _eta(spec, order):
    return eta_product_qexp(EtaProduct.from_spec(spec), order)


def _x(N, order):
    return hauptmodul_qexp(N, order)


def _ratfun(text):
    return RationalFunction.parse(text, "x")


def _chain_identity(hi, lo):
    expr = data.chain(hi, lo)

    def sides(order):
        return _x(lo, order), evaluate(expr, _x(hi, order))

    return sides


def _scaled_chain_identity(hi, lo, m, expr):
    f = _ratfun(expr)

    def sides(order):
        return _x(lo, order).substitute_power(m), evaluate(f, _x(hi, order))

    return sides


def _shift_identity(N, shift, spec):
    def sides(order):
        x = _x(N, order)
        return evaluate(Polynomial([shift, 1]), x), _eta(spec, order)

    return sides


def _t36_sum(order):
    d = data.sum_product_data(6)
    x6 = _x(6, order).as_laurent()
    lhs = x6 + d.kappa / x6.substitute_power(6)
    t = _x("t36", order)
    return QExpansion.from_laurent(lhs), evaluate(d.S_poly, t)


def _t36_product(order):
    d = data.sum_product_data(6)
    x6 = _x(6, order).as_laurent()
    lhs = x6 * d.kappa / x6.substitute_power(6)
    t = _x("t36", order)
    return QExpansion.from_laurent(lhs), evaluate(d.P_poly, t)


def _t36_branches(sign):
    def sides(order):
        d = data.sum_product_data(6)
        t = _x("t36", order).as_laurent()
        s = laurent_sqrt(d.curve_quartic(t))
        rhs = d.branch_factor(t) * (d.branch_even(t) + sign * d.branch_odd(t) * s)
        x6 = _x(6, order).as_laurent()
        lhs = x6 if sign < 0 else d.kappa / x6.substitute_power(6)
        return QExpansion.from_laurent(lhs), QExpansion.from_laurent(rhs)

    return sides


def _t36_shift(poly_text, spec):
    def sides(order):
        return evaluate(Polynomial.parse(poly_text, "x"), _x("t36", order)), _eta(spec, order)

    return sides


def _p6(order):
    return evaluate(_ratfun("x/(x+8)"), _x(6, order)), _eta(data.P6_ETA, order)


ETA_IDENTITIES: dict[str, object] = {
    "x6plus8": _shift_identity(6, 8, data.X6_PLUS_8_ETA),
    "x6plus9": _shift_identity(6, 9, data.X6_PLUS_9_ETA),
    "x2_from_x6": _chain_identity(6, 2),
    "x3_from_x6": _chain_identity(6, 3),
    "x2_from_x4": _chain_identity(4, 2),
    "x3_from_x9": _chain_identity(9, 3),
    "x4_from_x16": _chain_identity(16, 4),
    "x5_from_x25": _chain_identity(25, 5),
    "x6_from_x18": _chain_identity(18, 6),
    "x5_from_x10": _chain_identity(10, 5),
    **{
        f"x{lo}_at_q{m}_from_x{hi}": _scaled_chain_identity(hi, lo, m, expr)
        for hi, lo, m, expr in data.SCALED_CHAINS
    },
    "p6_eta": _p6,
    "t36minus1": _t36_shift("x-1", data.T36_MINUS_1_ETA),
    "t36minus2": _t36_shift("x-2", data.T36_MINUS_2_ETA),
    "t36_cyclotomic": _t36_shift("x^2-x+1", data.T36_CYCLOTOMIC_ETA),
    "x6_sum_t36": _t36_sum,
    "x6_product_t36": _t36_product,
    "x6_branch_t36": _t36_branches(-1),
    "x6_fricke_branch_t36": _t36_branches(1),
}


def verify_eta_identity(name: str, order: int) -> IdentityReport:
    if name not in ETA_IDENTITIES:
        raise KeyError(f"unknown identity {name!r}")
    lhs, rhs = ETA_IDENTITIES[name](order + GUARD)
    return compare_qexp(name, lhs, rhs, order)


def verify_quartic_branch(order: int) -> IdentityReport:
    """P36(t36(q)) has a rational square root as a q-series."""
    d = data.sum_product_data(6)
    t = _x("t36", order + GUARD).as_laurent()
    value = d.curve_quartic(t)
    try:
        s = laurent_sqrt(value)
    except NoRationalBranchError as exc:
        return failed("quartic_t36_square", order, value.valuation, value.leading, 0, note=str(exc))
    v = value.valuation
    return compare_series("quartic_t36_square", (s * s).shift(-v), value.shift(-v), order)


# -- weight-one forms ------------------------------------------------------------------


def form_qexp(N: int, order: int) -> QExpansion:
    return _eta(data.FORM_ETA[N], order)


def h_of_hauptmodul(N: int, order: int) -> QExpansion:
    """h_N(x_N(q)) by composing the Frobenius series with x_N."""
    x = _x(N, order).as_laurent()
    return QExpansion.from_laurent(series_compose(h_series(N, order), x))


def form_from_covering(N: int, order: int) -> QExpansion:
    """P_N(0)^(1/12) Q_N(x_N)^(-1/12) eta^2, with the constants cancelled."""
    P, Q = data.covering(N)
    qx = evaluate(Q * (1 / P[0]), _x(N, order))
    eta2 = eta_product_qexp(EtaProduct(1, ((1, 2),)), order)
    return (qx ** Fraction(-1, 12)) * eta2


def verify_form_equals_eta(N: int, order: int) -> list[IdentityReport]:
    n = order + GUARD
    h = h_of_hauptmodul(N, n)
    return [
        compare_qexp(f"form_h{N}_eta", h, form_qexp(N, n), order),
        compare_qexp(f"form_h{N}_covering", h, form_from_covering(N, n), order),
    ]


def verify_h4_equals_h2(order: int) -> IdentityReport:
    n = order + GUARD
    return compare_qexp("h4_equals_h2", h_of_hauptmodul(4, n), h_of_hauptmodul(2, n), order)


def verify_dedekind_stiller(order: int) -> IdentityReport:
    """prod (1-q^n)^2 = F^(1/12) 2F1(1/12, 5/12; 1; Jhat) with Jhat = 1728/j
    and F = Jhat / (1728 q)."""
    n = order + GUARD
    jhat = QExpansion(Fraction(0), LaurentSeries.constant(1728, n)) / j_qexp(n)
    f_unit = jhat.unit * Fraction(1, 1728)
    rhs = series_pow_rational(f_unit, Fraction(1, 12)) * series_compose(
        gauss_series(GaussParams(Fraction(1, 12), Fraction(5, 12), 1), n), jhat.as_laurent()
    )
    lhs = series_pow_rational(eta_unit(1, n), 2)
    return compare_series("dedekind_stiller", lhs, rhs, order)
