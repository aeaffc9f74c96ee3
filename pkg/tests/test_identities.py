from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modhyp import data
from modhyp.exact import Polynomial
from modhyp.identities import (
    AGM_KINDS,
    EXTENSION_KINDS,
    REGISTRY,
    build_cusp_prefactor,
    coefficient_sequence,
    run_full_suite,
    run_identity,
    solve_branch,
    verify_agm_corollary,
    verify_branch,
    verify_cusp_prefactor,
    verify_extension,
    verify_septic,
    verify_sextic,
    verify_square_level,
)

MANIFEST = Path(__file__).with_name("identity_manifest.txt")

SEQUENCES = {
    5: [1, -10, 230, -6500, 199750, -6366060, 204990300, -6539387400],
    6: [1, -6, 42, -312, 2394, -18756, 149136, -1199232],
    7: [1, -21, 693, -23940, 734643, -13697019, -494620749, 83079255420],
}


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_square_level(N):
    assert verify_square_level(N, 40).passed


@pytest.mark.parametrize("N", [2, 3, 4, 5])
@pytest.mark.parametrize("order", [1, 7, 64])
def test_square_level_at_other_orders(N, order):
    assert verify_square_level(N, order).passed


def test_transform_constants_cancel():
    for N in (2, 3, 4, 5):
        td = data.transform_data(N)
        assert td.R.leading == 1 and td.R.degree == N
        assert td.Sprime.degree == N - 1
        s0 = td.Sprime[0]
        assert td.multiplier_constant ** td.prefactor_exponent.denominator * s0 ** td.prefactor_exponent.numerator == 1


@pytest.mark.parametrize("kind", AGM_KINDS)
def test_agm(kind):
    assert verify_agm_corollary(kind, 50).passed


@pytest.mark.parametrize("kind", EXTENSION_KINDS)
def test_extensions(kind):
    assert verify_extension(kind, 40).passed


@pytest.mark.parametrize("N, z_lead, zp_val", [(6, 72, 6), (7, 49, 7)])
def test_branch_asymptotics(N, z_lead, zp_val):
    b = solve_branch(N, 30)
    assert (b.z.valuation, b.z.leading) == (1, z_lead)
    assert (b.zprime.valuation, b.zprime.leading) == (zp_val, z_lead)


@pytest.mark.parametrize("N", [6, 7])
def test_branch_round_trip(N):
    assert verify_branch(N, 40).passed


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=12, max_value=60), st.sampled_from([6, 7]))
def test_branch_defining_relations_any_order(order, N):
    b = solve_branch(N, order)
    other = b.kappa / b.zprime
    for got, want in ((b.z + other, b.S), (b.z * other, b.P)):
        n = min(got.prec, want.prec)
        assert got.first_mismatch(want, n) is None


def test_sextic_and_septic():
    assert verify_sextic(40).passed
    assert verify_septic(40).passed


def test_sextic_leading_coefficient():
    b = solve_branch(6, 20)
    E = b.z**6 / b.zprime * (b.z + 9) ** 3 / (b.zprime + 9) ** 2 * (b.z + 8) ** 2 / (b.zprime + 8) ** 3
    assert E.valuation == 0 and E.leading == 6**12 == 2176782336


def test_cusp_prefactor_six():
    pref = build_cusp_prefactor(6)
    exps = {f.location: (f.exponent, g.exponent) for f, g in zip(pref.numerator, pref.denominator)}
    assert exps == {F(0): (6, 1), F(-8): (2, 3), F(-9): (3, 2)}
    assert pref.numerator_poly() == Polynomial.parse("z^6*(z+9)^3*(z+8)^2", "z")
    assert verify_cusp_prefactor(6).passed


def test_cusp_prefactor_seven_is_single_factor():
    pref = build_cusp_prefactor(7)
    assert len(pref.numerator) == 1
    assert pref.format() == "z^7 / (zp)"
    assert verify_cusp_prefactor(7).passed


@pytest.mark.parametrize("N", [5, 6, 7])
def test_sequences(N):
    assert coefficient_sequence(N, 8) == SEQUENCES[N]


@pytest.mark.parametrize("N", [5, 6, 7])
def test_sequences_integral_to_60(N):
    assert len(coefficient_sequence(N, 61)) == 61


def test_registry_matches_manifest():
    names = [line.strip() for line in MANIFEST.read_text().splitlines() if line.strip()]
    assert list(REGISTRY) == names
    assert len(names) >= 20


def test_full_suite_order_one_and_forty():
    for order in (1, 40):
        bad = [r.line() for r in run_full_suite(order) if not r.passed]
        assert bad == []


def test_unknown_identity():
    with pytest.raises(KeyError):
        run_identity("nope", 5)


@pytest.fixture
def perturbed_quintic(monkeypatch):
    r, s, mult, e = data._TRANSFORM_TEXT[5]
    monkeypatch.setitem(data._TRANSFORM_TEXT, 5, (r, s.replace("15*x^2", "16*x^2"), mult, e))
    data.transform_data.cache_clear()
    yield
    data.transform_data.cache_clear()


def test_perturbation_fails_only_dependent_reports(perturbed_quintic):
    failing = {r.name: r for r in run_full_suite(20) if not r.passed}
    assert set(failing) == {"square_level_5", "operator_quintic"}
    m = failing["square_level_5"].first_mismatch
    assert m is not None and m.power == 2
