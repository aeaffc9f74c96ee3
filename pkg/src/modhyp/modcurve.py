"""Arithmetic of Gamma0(N): index, cusps and widths, elliptic points, genus,
cusp liftings along X0(N^2) -> X0(N), and Fricke quotient genera."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def kronecker(d: int, p: int) -> int:
    """Kronecker symbol (d/p) for a prime p."""
    if p == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = pow(d % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


@dataclass(frozen=True)
class ArithmeticProfile:
    N: int
    psi: int
    sigma_infty: int
    eps_rho: int
    eps_i: int
    genus: int

    @property
    def singular_point_count(self) -> int:
        return self.sigma_infty + self.eps_i + self.eps_rho


@lru_cache(maxsize=None)
def arithmetic_profile(N: int) -> ArithmeticProfile:
    if N < 1:
        raise ValueError("level must be positive")
    ps = prime_factors(N)
    psi = N
    for p in ps:
        psi = psi // p * (p + 1)
    sigma = sum(euler_phi(gcd(d, N // d)) for d in divisors(N))
    eps_i = 0
    if N % 4:
        eps_i = 1
        for p in ps:
            eps_i *= 1 + kronecker(-4, p)
    eps_rho = 0
    if N % 9:
        eps_rho = 1
        for p in ps:
            eps_rho *= 1 + kronecker(-3, p)
    g = 1 + Fraction(psi, 12) - Fraction(sigma, 2) - Fraction(eps_rho, 3) - Fraction(eps_i, 4)
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus formula gave {g} at level {N}")
    return ArithmeticProfile(N, psi, sigma, eps_rho, eps_i, int(g))


def genus_zero_levels(bound: int) -> list[int]:
    return [N for N in range(2, bound + 1) if arithmetic_profile(N).genus == 0]


# -- cusps ----------------------------------------------------------------


def cusp_width(d: int, N: int) -> int:
    return N // (d * gcd(d, N // d))


@dataclass(frozen=True, order=True)
class Cusp:
    """The class [a/d] on X0(N); ``a`` is the least positive representative
    coprime to ``d`` in its residue class mod gcd(d, N/d)."""

    d: int
    a: int
    N: int = field(compare=False)

    @property
    def width(self) -> int:
        return cusp_width(self.d, self.N)

    @property
    def is_infinity(self) -> bool:
        return self.d == self.N

    @property
    def is_zero(self) -> bool:
        return self.d == 1

    @property
    def rational(self) -> bool:
        # Defined over Q exactly when its Galois orbit is a single class.
        return euler_phi(gcd(self.d, self.N // self.d)) == 1

    def label(self) -> str:
        return f"[{self.a}/{self.d}]_{self.N}"

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "d": self.d,
            "width": self.width,
            "rational": self.rational,
            "infinity": self.is_infinity,
            "zero": self.is_zero,
        }


def _least_coprime(r: int, g: int, d: int) -> int:
    a = r % g or g
    while gcd(a, d) != 1:
        a += g
    return a


def canonical_cusp(N: int, a: int, c: int) -> Cusp:
    """Class of a/c (any integers, not both zero) on X0(N)."""
    if c < 0 or (c == 0 and a < 0):
        a, c = -a, -c
    g0 = gcd(a, c)
    a, c = a // g0, c // g0
    if c == 0:
        return Cusp(N, 1, N)
    d = gcd(c, N)
    m = gcd(d, N // d)
    if m == 1:
        return Cusp(d, 1, N)
    r = (a * (c // d)) % m
    return Cusp(d, _least_coprime(r, m, d), N)


@lru_cache(maxsize=None)
def cusp_table(N: int) -> tuple[Cusp, ...]:
    out = []
    for d in divisors(N):
        m = gcd(d, N // d)
        for r in range(1, m + 1):
            if gcd(r, m) == 1:
                out.append(Cusp(d, _least_coprime(r, m, d), N))
    return tuple(sorted(out))


def _stabilizer_step(a: int, c: int, member, denominators: int) -> Fraction:
    """Least h > 0 (in (1/denominators)Z) with g T^h g^-1 in the group,
    where g(inf) = a/c."""
    k = 1
    while True:
        h = Fraction(k, denominators)
        m = (1 - a * c * h, a * a * h, -c * c * h, 1 + a * c * h)
        if member(m):
            return h
        k += 1


def _in_gamma0(M: int):
    def test(m) -> bool:
        if any(x.denominator != 1 for x in m):
            return False
        return m[2].numerator % M == 0

    return test


def _in_conjugate_gamma0(N: int):
    # w^-1 Gamma0(N) w with w = diag(N, 1): matrices (a, b/N; N c, d).
    def test(m) -> bool:
        a, b, c, d = m
        if a.denominator != 1 or d.denominator != 1:
            return False
        if (b * N).denominator != 1:
            return False
        cc = c / N
        return cc.denominator == 1 and cc.numerator % N == 0

    return test


@dataclass(frozen=True)
class CuspFibre:
    base: Cusp
    points: tuple[tuple[Cusp, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.points)


def _ramification(N: int, cusp: Cusp, which: str) -> int:
    big = N * N
    if which == "phi":
        outer = _stabilizer_step(cusp.a, cusp.d, _in_gamma0(N), 1)
    else:
        outer = _stabilizer_step(cusp.a, cusp.d, _in_conjugate_gamma0(N), N)
    inner = _stabilizer_step(cusp.a, cusp.d, _in_gamma0(big), 1)
    e = inner / outer
    if e.denominator != 1:
        raise ArithmeticError("non-integral ramification")
    return int(e)


def _image(N: int, cusp: Cusp, which: str) -> Cusp:
    if which == "phi":
        return canonical_cusp(N, cusp.a, cusp.d)
    return canonical_cusp(N, N * cusp.a, cusp.d)


@lru_cache(maxsize=None)
def _fibres(N: int, which: str) -> dict[Cusp, tuple[tuple[Cusp, int], ...]]:
    if which not in ("phi", "phi_prime"):
        raise ValueError("map must be 'phi' or 'phi_prime'")
    groups: dict[Cusp, list[tuple[Cusp, int]]] = {}
    for c in cusp_table(N * N):
        groups.setdefault(_image(N, c, which), []).append((c, _ramification(N, c, which)))
    return {k: tuple(v) for k, v in groups.items()}


def cusp_fibre(N: int, d: int, a: int = 1, which: str = "phi") -> CuspFibre:
    """Fibre of X0(N^2) -> X0(N) over [a/d]_N."""
    if N % d:
        raise ValueError(f"{d} does not divide {N}")
    base = canonical_cusp(N, a, d)
    return CuspFibre(base, _fibres(N, which)[base])


def lift_cusps(N: int, which: str = "phi") -> dict[str, CuspFibre]:
    """Preimages of the distinguished cusps [1/1]_N and [1/N]_N.

    For ``phi_prime`` the targets are the classes [1/1]_N/N and [1/N]_N/N
    of the conjugate curve; they are keyed by the X0(N) labels.
    """
    return {
        "zero": cusp_fibre(N, 1, 1, which),
        "infinity": cusp_fibre(N, N, 1, which),
    }


def format_formal_sum(points) -> str:
    terms = []
    for c, m in points:
        terms.append(c.label() if m == 1 else f"{m}*{c.label()}")
    return " + ".join(terms)


# -- class numbers and the Fricke quotient --------------------------------


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Number of reduced primitive positive-definite forms of discriminant D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
        a += 1
    return count


def fundamental_discriminant(D: int) -> int:
    """Discriminant of the imaginary quadratic field containing sqrt(D)."""
    m = -D
    sq = 1
    for p in prime_factors(m):
        while m % (p * p) == 0:
            m //= p * p
            sq *= p
    d0 = -m
    return d0 if d0 % 4 == 1 else 4 * d0


def is_discriminant(D: int) -> bool:
    return D < 0 and D % 4 in (0, 1)


@dataclass(frozen=True)
class FrickeQuotient:
    """Fixed-point count ``a`` and genus of X0(N)/w_N under several readings
    of the class-number term; ``reading`` names the first integral one."""

    N: int
    a: int | None
    genus: int | None
    reading: str | None
    readings: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.reading is not None

    @property
    def ambiguous(self) -> bool:
        vals = {v[1] for v in self.readings.values()}
        return len(vals) > 1


def _fixed_point_readings(N: int) -> dict[str, int]:
    h4 = class_number(-4 * N)
    hn = class_number(-N) if is_discriminant(-N) else 0
    return {
        # N = 1 mod 4 adds h(-N), which only exists when -N is a discriminant.
        "stated": h4 + (hn if N % 4 == 1 else 0),
        "three_mod_four": h4 + (hn if N % 4 == 3 else 0),
        "field": class_number(fundamental_discriminant(-4 * N))
        + (class_number(fundamental_discriminant(-N)) if N % 4 == 3 else 0),
    }


def fricke_genus_plus(N: int) -> FrickeQuotient:
    if N < 5:
        raise ValueError("the fixed-point formula needs N >= 5")
    g = arithmetic_profile(N).genus
    readings = {}
    for name, a in _fixed_point_readings(N).items():
        readings[name] = (a, Fraction(g + 1, 2) - Fraction(a, 4))
    for name in ("stated", "three_mod_four", "field"):
        a, gp = readings[name]
        if gp.denominator == 1 and gp >= 0:
            return FrickeQuotient(N, a, int(gp), name, readings)
    return FrickeQuotient(N, None, None, None, readings)
