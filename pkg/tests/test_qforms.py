from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modhyp import data
from modhyp.exact import LaurentSeries
from modhyp.qforms import (
    compare_qexp,
    ETA_IDENTITIES,
    EtaProduct,
    QExpansion,
    eta_product_qexp,
    eta_unit,
    form_qexp,
    hauptmodul_qexp,
    j_from_eisenstein,
    j_qexp,
    verify_covering,
    verify_dedekind_stiller,
    verify_eta_identity,
    verify_form_equals_eta,
    verify_h4_equals_h2,
    verify_j_oracle,
    verify_quartic_branch,
)

# Ramanujan tau(1..8) and the j-invariant's first coefficients.
TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480]
J_HEAD = [1, 744, 196884, 21493760, 864299970]


def test_pentagonal_numbers():
    assert eta_unit(1, 13).dense(0, 13) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]


def test_eta_power_24_is_delta():
    delta = eta_product_qexp(EtaProduct.parse("[1]^24"), 8)
    assert delta.q_exponent == 1
    assert delta.unit.dense(0, 8) == TAU


def test_parse_bracket_notation():
    p = EtaProduct.parse("72*[2][6]^5/[1]^5[3]")
    assert p == EtaProduct.from_spec(data.HAUPTMODUL_ETA[6])
    assert p.weight == 0 and p.q_exponent == 1
    assert EtaProduct.parse("[1]^(5/2)/[5]^(1/2)").weight == 1


def test_rational_exponent_eta_product():
    h5 = form_qexp(5, 6)
    assert h5.q_exponent == 0 and h5.unit[0] == 1


def test_j_head():
    j = j_qexp(5)
    assert j.q_exponent == -1
    assert j.unit.dense(0, 5) == J_HEAD
    assert j_from_eisenstein(5).unit.dense(0, 5) == J_HEAD


def test_hauptmodul_leading_terms():
    assert hauptmodul_qexp(2, 3).unit.dense(0, 3) == [4096, 98304, 1228800]
    x6 = hauptmodul_qexp(6, 4)
    assert x6.q_exponent == 1 and x6.unit[0] == 72
    t = hauptmodul_qexp("t36", 4)
    assert t.q_exponent == -1 and t.unit[0] == 1


def test_qexpansion_normalizes_valuation():
    q = QExpansion(F(1, 2), LaurentSeries([0, 0, 3], 5))
    assert q.q_exponent == F(5, 2) and q.unit[0] == 3
    assert q.to_json() == {"q_exponent": "1/2", "valuation": 2, "coeffs": ["3/1", "0/1", "0/1"]}


def test_qexpansion_rational_power():
    x = hauptmodul_qexp(4, 10)
    sq = x ** F(1, 2)
    assert (sq * sq).unit.first_mismatch(x.unit, 10) is None


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_coverings(N):
    assert verify_covering(N, 40).passed


def test_j_oracle():
    assert verify_j_oracle(40).passed


@pytest.mark.parametrize("name", sorted(ETA_IDENTITIES))
def test_eta_identities(name):
    assert verify_eta_identity(name, 40).passed


def test_quartic_branch():
    assert verify_quartic_branch(40).passed


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 7])
def test_forms(N):
    assert all(r.passed for r in verify_form_equals_eta(N, 40))


def test_h4_equals_h2_and_stiller():
    assert verify_h4_equals_h2(40).passed
    assert verify_dedekind_stiller(40).passed


def test_perturbed_identity_fails_with_mismatch():
    x6 = hauptmodul_qexp(6, 20)
    bumped = QExpansion(x6.q_exponent, x6.unit + LaurentSeries.monomial(5, 20))
    r = compare_qexp("perturbed", x6, bumped, 12)
    assert not r.passed and r.first_mismatch.power == 6


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 12), st.integers(-6, 6)), min_size=1, max_size=4))
def test_eta_product_multiplicative(factors):
    p = EtaProduct(1, tuple(factors))
    q = EtaProduct.parse("[2]^3/[1]")
    n = 15
    lhs = eta_product_qexp(p * q, n)
    rhs = eta_product_qexp(p, n) * eta_product_qexp(q, n)
    assert lhs.q_exponent == rhs.q_exponent
    assert lhs.unit.first_mismatch(rhs.unit, n) is None
