from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modhyp.exact import LaurentSeries, Polynomial, RationalFunction, series_compose
from modhyp.fuchsian import (
    INFINITY,
    J_PARAMS,
    FuchsianOperator,
    GaussParams,
    HeunParams,
    IrregularSingularity,
    exponent_survey,
    extract_recurrence,
    frobenius_series,
    gauss_operator,
    gauss_series,
    h_from_definition,
    h_series,
    heun_series,
    lifted_operator,
    local_exponents,
    run_recurrence,
    singular_points,
    verify_h6_heun,
    verify_hN_closed_forms,
    weak_pullback,
)
from modhyp.identities import STATED_OPERATORS, verify_quintic_operator

# Frozen Taylor coefficients: h2 from 2F1(1/4, 1/4; 1; -z/64), h5 from 500^n c_n.
H2_HEAD = [1, F(-1, 1024), F(25, 4194304)]
H5_HEAD = [1, F(-1, 50), F(23, 25000), F(-13, 250000)]


def test_gauss_series_coefficients():
    s = gauss_series(GaussParams(F(1, 4), F(1, 4), 1), 4)
    # (1/4)^2 = 1/16, then (1/4 * 5/4)^2 / 4 = 25/1024
    assert s.dense(0, 3) == [1, F(1, 16), F(25, 1024)]


def test_gauss_operator_annihilates_its_series():
    p = GaussParams(F(1, 3), F(2, 3), 1)
    y = gauss_series(p, 30)
    r = gauss_operator(p).apply(y)
    assert all(c == 0 for c in r.dense(r.valuation, 25))


def test_frobenius_matches_term_ratio():
    p = GaussParams(F(1, 12), F(5, 12), 1)
    assert frobenius_series(gauss_operator(p), 20) == gauss_series(p, 20)


def test_h_series_heads():
    assert h_series(2, 3).dense(0, 3) == H2_HEAD
    assert h_series(5, 4).dense(0, 4) == H5_HEAD


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_h_series_matches_definition(N):
    assert h_series(N, 30).first_mismatch(h_from_definition(N, 30), 30) is None


@pytest.mark.parametrize("N", sorted(STATED_OPERATORS))
def test_lifted_operator_equals_stated(N):
    a, b = STATED_OPERATORS[N]
    assert lifted_operator(N) == FuchsianOperator.parse(a, b, "z")


def test_two_pullback_routes_agree():
    assert verify_quintic_operator(20).passed


def test_pullback_along_identity_is_identity():
    L = lifted_operator(6)
    assert L.pullback(RationalFunction(Polynomial.x())) == L
    assert L.gauge(RationalFunction.parse("x+3", "x"), 0) == L


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0),
       st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_pullback_along_affine_map_composes(a, b):
    L = gauss_operator(GaussParams(F(1, 4), F(3, 4), 1))
    f = RationalFunction(Polynomial([b, a]))
    g = RationalFunction(Polynomial([-b / a, 1 / a]))
    assert L.pullback(f).pullback(g) == L


def test_gauge_then_inverse_gauge():
    L = lifted_operator(5)
    q = RationalFunction.parse("x^2+2*x+5", "x")
    assert L.gauge(q, F(1, 3)).gauge(q, F(-1, 3)) == L


def test_weak_pullback_solution():
    # (x+16)^(-1/4) h2(x^2/(x+16)) solves the weak pullback along x^2/(x+16).
    L = lifted_operator(2)
    M = weak_pullback(L, Polynomial.parse("x^2"), Polynomial.parse("x+16"), F(1, 4))
    arg = LaurentSeries.from_ratfun(RationalFunction.parse("x^2/(x+16)", "x"), 30)
    from modhyp.exact import pow_unit

    y = pow_unit(LaurentSeries([16, 1], 30), F(-1, 4)) * series_compose(h_series(2, 30), arg)
    r = M.apply(y)
    assert all(c == 0 for c in r.dense(r.valuation, 20))


RECURRENCES = {
    5: ["4*n^2-4*n+1", "88*n^2+44*n+10", "500*n^2+1000*n+500"],
    6: ["n^2", "17*n^2+17*n+6", "72*n^2+144*n+72"],
    7: ["9*n^2-6*n+1", "117*n^2+78*n+21", "441*n^2+882*n+441"],
}


@pytest.mark.parametrize("N", sorted(RECURRENCES))
def test_extracted_recurrence(N):
    got = extract_recurrence(lifted_operator(N))
    assert [p.format("n") for p in got] == RECURRENCES[N]


@pytest.mark.parametrize("N", sorted(RECURRENCES))
def test_recurrence_agrees_with_frobenius_to_60(N):
    rec = run_recurrence(extract_recurrence(lifted_operator(N)), 61)
    assert rec == h_series(N, 61).dense(0, 61)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7, 9, 16, 25])
def test_exponent_survey_matches_profile(N):
    exponent_survey(N)


def test_h7_elliptic_points_are_a_quadratic_cluster():
    pts = singular_points(lifted_operator(7))
    cluster = [p for p in pts if isinstance(p.location, Polynomial)]
    assert len(cluster) == 1
    assert cluster[0].location == Polynomial.parse("x^2+13*x+49")
    assert cluster[0].exponents == (0, F(1, 3)) and cluster[0].count == 2
    assert local_exponents(lifted_operator(7), INFINITY) == (F(2, 3), F(2, 3))


def test_irregular_point_detected():
    L = FuchsianOperator.parse("1/x^2", "0", "x")
    with pytest.raises(IrregularSingularity):
        L.theta_form()


@pytest.mark.parametrize("N", [2, 3, 4])
def test_closed_forms(N):
    assert verify_hN_closed_forms(N, 40).passed


def test_heun_form_of_h6():
    assert verify_h6_heun(40).passed


def test_heun_series_head():
    p = HeunParams(F(9, 8), F(3, 4), 1, 1, 1, 1)
    s = heun_series(p, 3)
    # a c1 = q c0 for a local Heun solution with gamma = 1
    assert s[1] == F(3, 4) / F(9, 8)


def test_j_params():
    assert (J_PARAMS.a, J_PARAMS.b, J_PARAMS.c) == (F(1, 12), F(5, 12), 1)
