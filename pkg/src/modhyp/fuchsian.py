"""Second-order Fuchsian operators D^2 + A*D + B with rational coefficients.

Solutions at a regular singular point are built from the theta-form of the
operator: after multiplying by ``x^2 * M(x)`` (with ``M(0) != 0``) the
operator reads ``sum_i x^i F_i(theta)``, ``theta = x d/dx``, and the
coefficients of a solution ``sum c_n x^n`` obey

    sum_i F_i(n - i) c_{n-i} = 0.

The same polynomials ``F_i`` give the printed recurrences, so the
Frobenius series and the recurrence are two readings of one object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm

from . import data
from .exact import (
    LaurentSeries,
    Polynomial,
    RationalFunction,
    as_rational,
    inverse_mod,
    poly_gcd,
    rational_root,
    rational_roots,
    squarefree_part,
)
from .report import IdentityReport, compare_series

INFINITY = "inf"

# Extra terms carried internally so composition bookkeeping never limits a report.
GUARD = 8


class FuchsianError(ValueError):
    pass


class IrregularSingularity(FuchsianError):
    pass


class ResonanceError(FuchsianError):
    pass


def _poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


@dataclass(frozen=True)
class FuchsianOperator:
    """The monic operator ``D^2 + A D + B``."""

    A: RationalFunction
    B: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, "A", RationalFunction.of(self.A))
        object.__setattr__(self, "B", RationalFunction.of(self.B))

    @classmethod
    def parse(cls, a_text: str, b_text: str, var: str | None = None) -> FuchsianOperator:
        return cls(RationalFunction.parse(a_text, var), RationalFunction.parse(b_text, var))

    # -- change of variable -------------------------------------------
    def translate(self, p) -> FuchsianOperator:
        """Operator in ``w = x - p``."""
        shift = RationalFunction(Polynomial([as_rational(p), 1]))
        return FuchsianOperator(self.A.compose(shift), self.B.compose(shift))

    def at_infinity(self) -> FuchsianOperator:
        """Operator in ``w = 1/x``."""
        w = RationalFunction(Polynomial.x())
        inv = RationalFunction(Polynomial([1]), Polynomial.x())
        a = 2 / w - self.A.compose(inv) / w**2
        b = self.B.compose(inv) / w**4
        return FuchsianOperator(a, b)

    def pullback(self, xi: RationalFunction) -> FuchsianOperator:
        """Operator satisfied by ``u(xi(x))`` for every solution ``u``."""
        xi = RationalFunction.of(xi)
        d1 = xi.derivative()
        d2 = d1.derivative()
        a = d1 * self.A.compose(xi) - d2 / d1
        b = d1 * d1 * self.B.compose(xi)
        return FuchsianOperator(a, b)

    def gauge(self, q: RationalFunction, alpha) -> FuchsianOperator:
        """Operator satisfied by ``q^(-alpha) * u`` for every solution ``u``."""
        alpha = as_rational(alpha)
        if alpha == 0:
            return self
        q = RationalFunction.of(q)
        psi = alpha * q.derivative() / q
        a = self.A + 2 * psi
        b = psi.derivative() + psi * psi + self.A * psi + self.B
        return FuchsianOperator(a, b)

    # -- application --------------------------------------------------
    def apply(self, y: LaurentSeries) -> LaurentSeries:
        """``y'' + A y' + B y`` as a truncated series about 0."""
        prec = y.prec
        a = LaurentSeries.from_ratfun(self.A, prec)
        b = LaurentSeries.from_ratfun(self.B, prec)
        d1 = y.derivative()
        return d1.derivative() + a * d1 + b * y

    def theta_form(self) -> tuple[Polynomial, list[tuple[Fraction, Fraction, Fraction]]]:
        """``M`` and the (M_i, a_i, b_i) with F_i(t) = M_i t(t-1) + a_i t + b_i."""
        x = Polynomial.x()
        dens = [self.A.den, self.B.den]
        stripped = []
        for d in dens:
            v = d.valuation() if d.coeffs else 0
            stripped.append((Polynomial(d.coeffs[v:]), v))
        if stripped[0][1] > 1 or stripped[1][1] > 2:
            raise IrregularSingularity("0 is an irregular singular point")
        m = _poly_lcm(stripped[0][0], stripped[1][0])
        a_poly = x * m * self.A
        b_poly = x * x * m * self.B
        if not (a_poly.is_polynomial() and b_poly.is_polynomial()):
            raise IrregularSingularity("0 is an irregular singular point")
        a_poly, b_poly = a_poly.num, b_poly.num
        top = max(m.degree, a_poly.degree, b_poly.degree)
        rows = [(m[i], a_poly[i], b_poly[i]) for i in range(top + 1)]
        return m, rows

    def format(self, var: str = "x") -> str:
        return f"D_{var}^2 + [{self.A.format(var)}]*D_{var} + [{self.B.format(var)}]"

    def __str__(self):
        return self.format()


# -- exponents --------------------------------------------------------


@dataclass(frozen=True)
class SingularPoint:
    """A singular point (or a cluster of conjugate ones sharing exponents).

    ``location`` is a Fraction, ``INFINITY``, or a squarefree polynomial
    whose ``count`` roots all carry the same exponents.
    """

    location: object
    exponents: tuple[Fraction, Fraction]
    kind: str
    count: int = 1

    def describe(self, var: str = "x") -> str:
        if isinstance(self.location, Polynomial):
            where = f"roots of {self.location.format(var)}"
        elif self.location == INFINITY:
            where = "infinity"
        else:
            where = str(self.location)
        e0, e1 = self.exponents
        return f"{where}: ({e0}, {e1}) [{self.kind}]" + (f" x{self.count}" if self.count > 1 else "")


def _indicial_roots(a0: Fraction, b0: Fraction) -> tuple[Fraction, Fraction]:
    # rho^2 + (a0 - 1) rho + b0 = 0
    disc = (a0 - 1) ** 2 - 4 * b0
    r = rational_root(disc, 2) if disc >= 0 else None
    if r is None:
        raise FuchsianError(f"exponents are not rational (discriminant {disc})")
    lo, hi = (1 - a0 - r) / 2, (1 - a0 + r) / 2
    return (lo, hi)


def _limits_at_zero(L: FuchsianOperator) -> tuple[Fraction, Fraction]:
    a = LaurentSeries.from_ratfun(L.A, 1)
    b = LaurentSeries.from_ratfun(L.B, 1)
    if (not a.is_zero() and a.valuation < -1) or (not b.is_zero() and b.valuation < -2):
        raise IrregularSingularity("pole order too high for a regular singular point")
    return a[-1], b[-2]


def _residues_mod(L: FuchsianOperator, f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """lim (x-p)A and lim (x-p)^2 B as polynomials mod ``f``, evaluated at
    each root p of the squarefree polynomial ``f``."""
    df = f.derivative()

    def residue(r: RationalFunction, power: int) -> Polynomial:
        den, k = r.den, 0
        while (den % f).is_zero():
            den = den.exact_div(f)
            k += 1
        if k > power:
            raise IrregularSingularity(f"pole of order {k} along {f}")
        if k < power:
            return Polynomial()
        return (r.num * inverse_mod(den * df**power % f, f)) % f

    return residue(L.A, 1), residue(L.B, 2)


def _charpoly_mod(r: Polynomial, f: Polynomial) -> Polynomial:
    """Characteristic polynomial of multiplication by ``r`` on Q[x]/f
    (Faddeev-LeVerrier)."""
    d = f.degree
    cols = [(r * Polynomial.monomial(i)) % f for i in range(d)]
    M = [[cols[j][i] for j in range(d)] for i in range(d)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d)] for i in range(d)]

    coeffs = [Fraction(1)]
    ident = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    acc = [row[:] for row in ident]
    for k in range(1, d + 1):
        am = matmul(M, acc)
        c = -sum(am[i][i] for i in range(d)) / k
        coeffs.append(c)
        acc = [[am[i][j] + (c if i == j else 0) for j in range(d)] for i in range(d)]
    return Polynomial(list(reversed(coeffs)))


def _clusters(L: FuchsianOperator, f: Polynomial) -> list[tuple[Polynomial, Fraction, Fraction]]:
    """Split squarefree ``f`` into factors on whose roots the residues of A
    and B are constant; returns (factor, residue of A, residue of B)."""
    ra, rb = _residues_mod(L, f)
    for r in (ra, rb):
        if r.degree > 0:
            values = rational_roots(_charpoly_mod(r, f))
            if not values:
                raise FuchsianError(f"exponents are not rational along {f}")
            out = []
            rest = f
            for c, _ in values:
                g = poly_gcd(rest, r - c)
                if g.degree > 0:
                    out.extend(_clusters(L, g.monic()))
                    rest = rest.exact_div(g)
            if rest.degree > 0:
                raise FuchsianError(f"exponents are not rational along {f}")
            return out
    return [(f, ra[0], rb[0])]


def local_exponents(L: FuchsianOperator, p) -> tuple[Fraction, Fraction]:
    """Indicial roots at ``p`` (a rational, ``INFINITY`` or an irreducible
    polynomial), sorted ascending."""
    if isinstance(p, str):
        if p != INFINITY:
            raise ValueError(f"unknown point {p!r}")
        return _indicial_roots(*_limits_at_zero(L.at_infinity()))
    if isinstance(p, Polynomial):
        if p.degree == 1:
            return local_exponents(L, -p[0] / p[1])
        parts = _clusters(L, p.monic())
        if len(parts) > 1:
            raise FuchsianError(f"exponents differ between the roots of {p}")
        return _indicial_roots(*parts[0][1:])
    p = as_rational(p)
    op = L if p == 0 else L.translate(p)
    return _indicial_roots(*_limits_at_zero(op))


def _kind(exps: tuple[Fraction, Fraction], at_infinity: bool) -> str:
    lo, hi = exps
    if lo == hi:
        return "cusp"
    if lo == 0 and hi == Fraction(1, 2):
        return "elliptic-2"
    if lo == 0 and hi == Fraction(1, 3):
        return "elliptic-3"
    return "ordinary-degenerate" if hi - lo == 1 else "other"


def singular_points(L: FuchsianOperator) -> list[SingularPoint]:
    """All singular points with exponents other than (0, 1)."""
    den = squarefree_part(L.A.den * L.B.den)
    out: list[SingularPoint] = []
    rest = den
    for r, _ in rational_roots(den):
        rest = rest.exact_div(Polynomial([-r, 1]))
        e = local_exponents(L, r)
        if e != (0, 1):
            out.append(SingularPoint(r, e, _kind(e, False)))
    if rest.degree > 0:
        for g, a0, b0 in _clusters(L, rest.monic()):
            e = _indicial_roots(a0, b0)
            if e != (0, 1):
                out.append(SingularPoint(g, e, _kind(e, False), g.degree))
    e = local_exponents(L, INFINITY)
    if e != (0, 1):
        out.append(SingularPoint(INFINITY, e, _kind(e, True)))
    return out


# -- series solutions ---------------------------------------------------


def _f_value(row: tuple[Fraction, Fraction, Fraction], t: int) -> Fraction:
    m, a, b = row
    return m * t * (t - 1) + a * t + b


def frobenius_series(L: FuchsianOperator, order: int) -> LaurentSeries:
    """Analytic solution at 0 equal to 1 there, exact below x^order.

    At an ordinary point the second free coefficient is fixed by y'(0) = 0.
    """
    _, rows = L.theta_form()
    if rows[0][2] != 0:
        raise FuchsianError("0 is not an exponent at the origin")
    ordinary = rows[0][1] == 0 and rows[0][2] == 0 and _is_ordinary(L)
    c = [Fraction(1)]
    for n in range(1, order):
        rhs = Fraction(0)
        for i in range(1, min(n, len(rows) - 1) + 1):
            if c[n - i]:
                rhs -= _f_value(rows[i], n - i) * c[n - i]
        lead = _f_value(rows[0], n)
        if lead == 0:
            if ordinary and n == 1 and rhs == 0:
                c.append(Fraction(0))
                continue
            raise ResonanceError(f"exponent difference {n} at the origin")
        c.append(rhs / lead)
    return LaurentSeries(c, order)


def _is_ordinary(L: FuchsianOperator) -> bool:
    return L.A.den[0] != 0 and L.B.den[0] != 0


def extract_recurrence(L: FuchsianOperator) -> list[Polynomial]:
    """Polynomials ``p_k(n)`` with ``sum_k p_k(n) c_{n+1-r+k} = 0``.

    The list runs from the oldest coefficient to ``c_{n+1}``, cleared to
    coprime integer coefficients with a positive leading term in the last.
    """
    _, rows = L.theta_form()
    n = Polynomial.x()
    polys = []
    for i in reversed(range(len(rows))):
        t = n + (1 - i)
        m, a, b = rows[i]
        polys.append(t * (t - 1) * m + t * a + Polynomial([b]))
    while polys and polys[0].is_zero():
        polys.pop(0)
    den = lcm(*(c.denominator for p in polys for c in p.coeffs))
    ints = [int(c * den) for p in polys for c in p.coeffs]
    g = reduce(gcd, ints, 0) or 1
    sign = -1 if polys[-1].leading < 0 else 1
    scale = Fraction(den * sign, g)
    return [p * scale for p in polys]


def run_recurrence(recurrence: list[Polynomial], count: int) -> list[Fraction]:
    """Coefficients c_0..c_{count-1} with c_0 = 1 from ``extract_recurrence`` output."""
    r = len(recurrence)
    c = [Fraction(1)]
    for m in range(1, count):
        nval = m - 1
        acc = Fraction(0)
        for k in range(r - 1):
            idx = m - (r - 1) + k
            if idx >= 0:
                acc += recurrence[k](Fraction(nval)) * c[idx]
        lead = recurrence[-1](Fraction(nval))
        if lead == 0:
            raise ResonanceError(f"recurrence degenerates at n={nval}")
        c.append(-acc / lead)
    return c


# -- named operators ----------------------------------------------------


@dataclass(frozen=True)
class GaussParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.c <= 0 and self.c.denominator == 1:
            raise ValueError("c must not be a non-positive integer")


@dataclass(frozen=True)
class HeunParams:
    """Local Heun data: singular points 0, 1, ``a``, infinity; accessory ``q``."""

    a: Fraction
    q: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("a", "q", "alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.gamma <= 0 and self.gamma.denominator == 1:
            raise ValueError("gamma must not be a non-positive integer")
        if self.a in (0, 1):
            raise ValueError("the third finite singular point must differ from 0 and 1")

    @property
    def epsilon(self) -> Fraction:
        return self.alpha + self.beta + 1 - self.gamma - self.delta


def gauss_operator(p: GaussParams) -> FuchsianOperator:
    x = Polynomial.x()
    a = RationalFunction(Polynomial([p.c]), x) + RationalFunction(
        Polynomial([p.a + p.b + 1 - p.c]), x - 1
    )
    b = RationalFunction(Polynomial([p.a * p.b]), x * (x - 1))
    return FuchsianOperator(a, b)


def heun_operator(p: HeunParams) -> FuchsianOperator:
    """y'' + (g/w + d/(w-1) + e/(w-a)) y' + (al*be*w - q)/(w(w-1)(w-a)) y."""
    w = Polynomial.x()
    a = (
        RationalFunction(Polynomial([p.gamma]), w)
        + RationalFunction(Polynomial([p.delta]), w - 1)
        + RationalFunction(Polynomial([p.epsilon]), w - p.a)
    )
    b = RationalFunction(w * (p.alpha * p.beta) - p.q, w * (w - 1) * (w - p.a))
    return FuchsianOperator(a, b)


def gauss_series(p: GaussParams, order: int) -> LaurentSeries:
    """2F1(a, b; c; w) by its term ratio."""
    coeffs = [Fraction(1)]
    for n in range(order - 1):
        coeffs.append(coeffs[-1] * (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)))
    return LaurentSeries(coeffs, order)


def heun_series(p: HeunParams, order: int) -> LaurentSeries:
    return frobenius_series(heun_operator(p), order)


def weak_pullback(
    L: FuchsianOperator, xi_num: Polynomial, xi_den: Polynomial, alpha
) -> FuchsianOperator:
    """Operator for ``xi_den^(-alpha) * u(xi_num/xi_den)``, u solving L."""
    xi = RationalFunction(xi_num, xi_den)
    return L.pullback(xi).gauge(RationalFunction(xi_den), alpha)


# The operator on the J-hat line whose analytic solution is 2F1(1/12, 5/12; 1).
J_PARAMS = GaussParams(Fraction(1, 12), Fraction(5, 12), Fraction(1))
J_INFINITY_EXPONENT = Fraction(1, 12)


@lru_cache(maxsize=None)
def lifted_operator(N: int) -> FuchsianOperator:
    """Normal-form weak lifting to the x_N-line along J-hat = 1728 Q_N / P_N."""
    P, Q = data.covering(N)
    return weak_pullback(gauss_operator(J_PARAMS), Q * 1728, P, J_INFINITY_EXPONENT)


@lru_cache(maxsize=None)
def _h_series_cached(N: int, order: int) -> LaurentSeries:
    return frobenius_series(lifted_operator(N), order)


def h_series(N: int, order: int) -> LaurentSeries:
    """h_N as a power series in x_N, exact below x_N^order."""
    return _h_series_cached(N, order)


def h_from_definition(N: int, order: int) -> LaurentSeries:
    """[P_N(x)/P_N(0)]^(-1/12) * 2F1(1/12, 5/12; 1; 1728 Q_N/P_N) directly."""
    from .exact import series_compose, series_pow_rational

    P, Q = data.covering(N)
    p_series = LaurentSeries.from_polynomial(P * (1 / P[0]), order)
    arg = LaurentSeries.from_polynomial(Q * 1728, order) / LaurentSeries.from_polynomial(P, order)
    return series_pow_rational(p_series, Fraction(-1, 12)) * series_compose(
        gauss_series(J_PARAMS, order), arg
    )


# -- surveys and closed forms ---------------------------------------------


def exponent_survey(N: int) -> list[SingularPoint]:
    """Singular points of the lifted operator, checked against the counts
    of cusps and elliptic points of X0(N)."""
    from .modcurve import arithmetic_profile

    pts = singular_points(lifted_operator(N))
    prof = arithmetic_profile(N)
    kinds = {"cusp": 0, "elliptic-2": 0, "elliptic-3": 0}
    for sp in pts:
        if sp.kind not in kinds:
            raise FuchsianError(f"unexpected singular point {sp.describe()}")
        kinds[sp.kind] += sp.count
    inf = [sp for sp in pts if sp.location == INFINITY]
    expected_inf = (Fraction(prof.psi, 12),) * 2
    if len(inf) != 1 or inf[0].exponents != expected_inf:
        raise FuchsianError(f"exponents at infinity are not {expected_inf}")
    if (kinds["cusp"], kinds["elliptic-2"], kinds["elliptic-3"]) != (
        prof.sigma_infty,
        prof.eps_i,
        prof.eps_rho,
    ):
        raise FuchsianError(f"singular point counts {kinds} disagree with the profile of X0({N})")
    return pts


_CLOSED_FORMS = {2: (Fraction(1, 4), 64), 3: (Fraction(1, 3), 27), 4: (Fraction(1, 2), 16)}

HEUN_H6 = HeunParams(Fraction(9, 8), Fraction(3, 4), 1, 1, 1, 1)
HEUN_H6_SCALE = Fraction(-1, 8)


def verify_hN_closed_forms(N: int, order: int) -> IdentityReport:
    """h_N(z) = 2F1(a, a; 1; -z/s) for N = 2, 3, 4."""
    from .exact import series_compose

    a, s = _CLOSED_FORMS[N]
    n = order + GUARD
    lhs = h_series(N, n)
    scaled = LaurentSeries([0, Fraction(-1, s)], n)
    rhs = series_compose(gauss_series(GaussParams(a, a, 1), n), scaled)
    return compare_series(f"h{N}_closed_form", lhs, rhs, order)


def verify_h6_heun(order: int) -> IdentityReport:
    """h_6(z) = Hl(9/8, 3/4; 1, 1, 1, 1; -z/8)."""
    from .exact import series_compose

    n = order + GUARD
    lhs = h_series(6, n)
    rhs = series_compose(heun_series(HEUN_H6, n), LaurentSeries([0, HEUN_H6_SCALE], n))
    return compare_series("h6_heun", lhs, rhs, order)
