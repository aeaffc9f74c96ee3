"""Embedded tables: Hauptmoduln as eta products, coverings of the j-line,
chains between levels, transformation data and sum-product uniformizations.

Every other module reads its constants from here. Polynomials are kept as
text and parsed on first use so the table stays readable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import Polynomial, RationalFunction

# (constant, ((level, exponent), ...)); exponents may be rational.
EtaSpec = tuple[Fraction, tuple[tuple[int, Fraction], ...]]


def _eta(constant, *factors) -> EtaSpec:
    return Fraction(constant), tuple((k, Fraction(e)) for k, e in factors)


# Hauptmoduln x_N with divisor (i inf) - (0).
HAUPTMODUL_ETA: dict[int, EtaSpec] = {
    2: _eta(2**12, (1, -24), (2, 24)),
    3: _eta(3**6, (1, -12), (3, 12)),
    4: _eta(2**8, (1, -8), (4, 8)),
    5: _eta(5**3, (1, -6), (5, 6)),
    6: _eta(72, (1, -5), (2, 1), (3, -1), (6, 5)),
    7: _eta(49, (1, -4), (7, 4)),
    9: _eta(27, (1, -3), (9, 3)),
    10: _eta(20, (1, -3), (2, 1), (5, -1), (10, 3)),
    16: _eta(8, (1, -2), (2, 1), (8, -1), (16, 2)),
    18: _eta(6, (1, -2), (2, 1), (3, 1), (6, -1), (9, -1), (18, 2)),
    25: _eta(5, (1, -1), (25, 1)),
}

# Fricke constants: x_N(tau) * x_N(-1/(N tau)) = kappa_N.
# Levels 10 and 18 have no recorded value.
KAPPA: dict[int, Fraction | None] = {
    2: Fraction(2**12),
    3: Fraction(3**6),
    4: Fraction(2**8),
    5: Fraction(125),
    6: Fraction(72),
    7: Fraction(49),
    9: Fraction(27),
    16: Fraction(8),
    25: Fraction(5),
    10: None,
    18: None,
}

# The weight-one forms h_N(x_N(q)).
FORM_ETA: dict[int, EtaSpec] = {
    2: _eta(1, (1, 4), (2, -2)),
    3: _eta(1, (1, 3), (3, -1)),
    4: _eta(1, (1, 4), (2, -2)),
    5: _eta(1, (1, Fraction(5, 2)), (5, Fraction(-1, 2))),
    6: _eta(1, (1, 6), (2, -3), (3, -2), (6, 1)),
    7: _eta(1, (1, Fraction(7, 3)), (7, Fraction(-1, 3))),
}

# Hauptmodul of X0+(36) and companions.
T36_ETA: EtaSpec = _eta(1, (1, -2), (2, 3), (3, 1), (4, -1), (6, -2), (9, -1), (12, 1), (18, 3), (36, -2))
T36_MINUS_1_ETA: EtaSpec = _eta(1, (1, -1), (4, 1), (9, 1), (36, -1))
T36_MINUS_2_ETA: EtaSpec = _eta(1, (2, -2), (3, -3), (4, 1), (6, 8), (9, 1), (12, -3), (18, -2))
T36_CYCLOTOMIC_ETA: EtaSpec = _eta(1, (1, -3), (2, 2), (3, 4), (4, -1), (6, -4), (9, -1), (12, 4), (18, 2), (36, -3))

X6_PLUS_8_ETA: EtaSpec = _eta(8, (1, -9), (2, 9), (3, 3), (6, -3))
X6_PLUS_9_ETA: EtaSpec = _eta(9, (1, -8), (2, 4), (3, 8), (6, -4))
# Moebius-shifted level-6 parameter x6/(x6+8).
P6_ETA: EtaSpec = _eta(9, (1, 4), (2, -8), (3, -4), (6, 8))

# j = P_N(x_N) / Q_N(x_N).
COVERINGS: dict[int, tuple[str, str]] = {
    2: ("(x+16)^3", "x"),
    3: ("(x+3)^3*(x+27)", "x"),
    4: ("(x^2+16*x+16)^3", "x*(x+16)"),
    5: ("(x^2+10*x+5)^3", "x"),
    6: ("(x+6)^3*(x^3+18*x^2+84*x+24)^3", "x*(x+9)^2*(x+8)^3"),
    7: ("(x^2+5*x+1)^3*(x^2+13*x+49)", "x"),
}

# Lower-level Hauptmodul as a rational function of a higher-level one:
# (higher level, lower level, x_lower in terms of x = x_higher).
CHAINS: tuple[tuple[int, int, str], ...] = (
    (4, 2, "x*(x+16)"),
    (9, 3, "x*(x^2+9*x+27)"),
    (16, 4, "x*(x+4)*(x^2+4*x+8)"),
    (25, 5, "x*(x^4+5*x^3+15*x^2+25*x+25)"),
    (18, 6, "x*(x^2+6*x+12)"),
    (6, 2, "x*(x+8)^3/(x+9)"),
    (6, 3, "x*(x+9)^2/(x+8)"),
    (10, 5, "x*(x+5)^2/(x+4)"),
)

# x_lower(M q) in terms of x_higher: (higher, lower, M, expression).
SCALED_CHAINS: tuple[tuple[int, int, int, str], ...] = (
    (4, 2, 2, "x^2/(x+16)"),
    (9, 3, 3, "x^3/(x^2+9*x+27)"),
    (16, 4, 4, "x^4/((x+2)*(x^2+4*x+8))"),
    (25, 5, 5, "x^5/(x^4+5*x^3+15*x^2+25*x+25)"),
    (6, 2, 3, "x^3*(x+8)/(x+9)^3"),
    (10, 5, 2, "x^2*(x+5)/(x+4)^2"),
)


@dataclass(frozen=True)
class TransformData:
    """x_N = R(x) and x_N(N tau) = x^N / Sprime(x), with x = x_{N^2};
    ``multiplier * Sprime(0)**exponent`` must equal 1."""

    N: int
    R: Polynomial
    Sprime: Polynomial
    kappa: Fraction
    multiplier_constant: Fraction
    prefactor_exponent: Fraction


@dataclass(frozen=True)
class SumProductData:
    """x_N(q) + kappa/x_N(q^N) = S(t) and their product = P(t)."""

    N: int
    S_poly: Polynomial
    P_poly: Polynomial
    kappa: Fraction
    curve_quartic: Polynomial
    branch_factor: Polynomial = field(default_factory=Polynomial)
    branch_even: Polynomial = field(default_factory=Polynomial)
    branch_odd: Polynomial = field(default_factory=Polynomial)


_TRANSFORM_TEXT = {
    2: ("x*(x+16)", "x+16", 2, Fraction(-1, 4)),
    3: ("x*(x^2+9*x+27)", "x^2+9*x+27", 3, Fraction(-1, 3)),
    4: ("x*(x+4)*(x^2+4*x+8)", "(x+2)*(x^2+4*x+8)", 4, Fraction(-1, 2)),
    5: ("x*(x^4+5*x^3+15*x^2+25*x+25)", "x^4+5*x^3+15*x^2+25*x+25", 5, Fraction(-1, 2)),
}

_SUM_PRODUCT_TEXT = {
    6: dict(
        S="(t-2)*(t^5-10*t^4+28*t^3-26*t^2+20*t+4)",
        P="72*t*(t-2)^2*(t^2-t+1)",
        quartic="t^4-8*t^3+12*t^2-8*t+4",
        factor="(t-2)/2",
        even="t^5-10*t^4+28*t^3-26*t^2+20*t+4",
        odd="t^3-6*t^2+6*t-2",
    ),
    7: dict(
        S="(t^3-7*t^2+14*t-7)*(t^4-14*t^3+63*t^2-98*t+35)",
        P="49*(t^3-7*t^2+14*t-7)^2",
        quartic="t^4-14*t^3+63*t^2-98*t+21",
        factor="(t^3-7*t^2+14*t-7)/2",
        even="t^4-14*t^3+63*t^2-98*t+35",
        odd="t^2-7*t+7",
    ),
}


@lru_cache(maxsize=None)
def covering(N: int) -> tuple[Polynomial, Polynomial]:
    """(P_N, Q_N) for a level with a direct formula, else via its chain."""
    if N in COVERINGS:
        p, q = COVERINGS[N]
        return Polynomial.parse(p, "x"), Polynomial.parse(q, "x")
    for hi, lo, expr in CHAINS:
        if hi == N and lo in COVERINGS:
            P, Q = covering(lo)
            j = RationalFunction(P, Q).compose(RationalFunction.parse(expr, "x"))
            return j.num.monic(), j.den.monic()
    raise KeyError(f"no covering recorded for level {N}")


@lru_cache(maxsize=None)
def chain(hi: int, lo: int) -> RationalFunction:
    for h, l, expr in CHAINS:
        if (h, l) == (hi, lo):
            return RationalFunction.parse(expr, "x")
    raise KeyError(f"no chain from level {hi} to level {lo}")


@lru_cache(maxsize=None)
def transform_data(N: int) -> TransformData:
    if N not in _TRANSFORM_TEXT:
        raise KeyError(f"no transformation data for N={N}")
    r, s, mult, e = _TRANSFORM_TEXT[N]
    return TransformData(
        N=N,
        R=Polynomial.parse(r, "x"),
        Sprime=Polynomial.parse(s, "x"),
        kappa=KAPPA[N],
        multiplier_constant=Fraction(mult),
        prefactor_exponent=e,
    )


@lru_cache(maxsize=None)
def sum_product_data(N: int) -> SumProductData:
    if N not in _SUM_PRODUCT_TEXT:
        raise KeyError(f"no sum-product data for N={N}")
    d = _SUM_PRODUCT_TEXT[N]
    return SumProductData(
        N=N,
        S_poly=Polynomial.parse(d["S"], "t"),
        P_poly=Polynomial.parse(d["P"], "t"),
        kappa=KAPPA[N],
        curve_quartic=Polynomial.parse(d["quartic"], "t"),
        branch_factor=Polynomial.parse(d["factor"], "t"),
        branch_even=Polynomial.parse(d["even"], "t"),
        branch_odd=Polynomial.parse(d["odd"], "t"),
    )
