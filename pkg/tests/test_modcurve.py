from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modhyp.modcurve import (
    arithmetic_profile,
    canonical_cusp,
    class_number,
    cusp_fibre,
    cusp_table,
    cusp_width,
    divisors,
    euler_phi,
    fricke_genus_plus,
    fundamental_discriminant,
    genus_zero_levels,
    lift_cusps,
)

GENUS_ZERO = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25]
SINGULAR_COUNTS = [3, 3, 3, 4, 4, 4, 4, 4, 6, 6, 6, 6, 8, 8]


def test_genus_zero_levels():
    assert genus_zero_levels(100) == GENUS_ZERO


def test_singular_point_counts():
    assert [arithmetic_profile(N).singular_point_count for N in GENUS_ZERO] == SINGULAR_COUNTS


@pytest.mark.parametrize(
    "N, psi, cusps, e2, e3, g",
    [(2, 3, 2, 1, 0, 0), (5, 6, 2, 2, 0, 0), (7, 8, 2, 0, 2, 0), (13, 14, 2, 2, 2, 0),
     (11, 12, 2, 0, 0, 1), (36, 72, 12, 0, 0, 1), (49, 56, 8, 0, 2, 1)],
)
def test_profiles(N, psi, cusps, e2, e3, g):
    p = arithmetic_profile(N)
    assert (p.psi, p.sigma_infty, p.eps_i, p.eps_rho, p.genus) == (psi, cusps, e2, e3, g)


def test_x0_36_cusps():
    table = cusp_table(36)
    assert len(table) == 12
    rational = sorted(c.d for c in table if c.rational)
    assert rational == [1, 2, 4, 9, 18, 36]


def test_x0_6_widths():
    assert {c.d: c.width for c in cusp_table(6)} == {1: 6, 2: 3, 3: 2, 6: 1}


def test_canonical_cusp_examples():
    assert canonical_cusp(36, 5, 6).label() == "[5/6]_36"
    assert canonical_cusp(36, 7, 6).label() == "[1/6]_36"
    assert canonical_cusp(36, 1, 0).is_infinity
    assert canonical_cusp(36, 3, 1).is_zero


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
@pytest.mark.parametrize("which", ["phi", "phi_prime"])
def test_cusp_lifts_total_N(N, which):
    for fibre in lift_cusps(N, which).values():
        assert fibre.degree == N


def test_lift_over_infinity_is_totally_ramified_under_phi_prime():
    fibre = lift_cusps(6, "phi_prime")["infinity"]
    assert [(c.label(), m) for c, m in fibre.points] == [("[1/36]_36", 6)]
    assert [(c.label(), m) for c, m in lift_cusps(6, "phi")["infinity"].points] == [
        ("[1/6]_36", 1), ("[5/6]_36", 1), ("[1/12]_36", 1), ("[5/12]_36", 1), ("[1/18]_36", 1), ("[1/36]_36", 1)]


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_every_fibre_has_degree_N(N):
    for c in cusp_table(N):
        assert cusp_fibre(N, c.d, c.a).degree == N


def test_class_numbers():
    assert [class_number(D) for D in (-3, -4, -20, -23, -144, -196)] == [1, 1, 2, 3, 4, 4]
    assert fundamental_discriminant(-144) == -4
    assert fundamental_discriminant(-28) == -7


@pytest.mark.parametrize("N", [36, 49])
def test_fricke_quotient_genus_zero(N):
    fq = fricke_genus_plus(N)
    assert fq.genus == 0 and fq.a == 4


@pytest.mark.parametrize("N", [5, 7, 13])
def test_fricke_quotient_of_genus_zero_primes(N):
    assert fricke_genus_plus(N).genus == 0


# -- properties ----------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=200))
def test_widths_sum_to_index(N):
    assert sum(c.width for c in cusp_table(N)) == arithmetic_profile(N).psi
    assert len(cusp_table(N)) == arithmetic_profile(N).sigma_infty


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=400))
def test_genus_integral(N):
    g = arithmetic_profile(N).genus
    assert isinstance(g, int) and g >= 0


@st.composite
def gamma0_element(draw, N):
    """A random matrix (a b; c d) in Gamma0(N)."""
    c = N * draw(st.integers(min_value=-6, max_value=6))
    d = draw(st.integers(min_value=-30, max_value=30).filter(lambda d: gcd(c, d) == 1))
    # solve a d - b c = 1
    g, x, y = _egcd(d, -c)
    k = draw(st.integers(min_value=-3, max_value=3))
    return x + k * c, y + k * d, c, d


def _egcd(a, b):
    if b == 0:
        return (abs(a), (1 if a > 0 else -1), 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_cusp_class_invariant_under_gamma0(dat):
    N = dat.draw(st.sampled_from([4, 6, 8, 9, 12, 16, 18, 25, 36, 49]))
    c = dat.draw(st.sampled_from(cusp_table(N)))
    a, b, cc, d = dat.draw(gamma0_element(N))
    assert a * d - b * cc == 1
    # gamma . (a0/c0)
    num, den = a * c.a + b * c.d, cc * c.a + d * c.d
    assert canonical_cusp(N, num, den) == c


def test_euler_phi_and_divisors():
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert [euler_phi(n) for n in (1, 6, 9, 12)] == [1, 2, 6, 4]
    assert cusp_width(2, 36) == 9
