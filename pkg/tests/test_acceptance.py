"""One printed PASS/FAIL line per acceptance criterion.

Every comparison is exact (Fraction equality, no tolerance). The only
thresholds are wall-clock: sequences under 1 s, the full verification
run at 40 terms under 60 s.
"""

import time
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modhyp import fuchsian, identities, modcurve, qforms
from modhyp.cli import main
from modhyp.exact import LaurentSeries, Polynomial, RationalFunction, laurent_sqrt

SEQUENCE_SECONDS = 1.0
SUITE_SECONDS = 60.0
ORDER = 40

PRINTED = {
    5: [1, -10, 230, -6500, 199750, -6366060, 204990300, -6539387400],
    6: [1, -6, 42, -312, 2394, -18756, 149136, -1199232],
    7: [1, -21, 693, -23940, 734643, -13697019, -494620749, 83079255420],
}


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[criterion {number}] {status}  {title}" + (f"  ({detail})" if detail else ""))
        assert ok, detail

    return emit


def test_criterion_1_integral_sequences(report):
    fuchsian.lifted_operator.cache_clear()
    start = time.perf_counter()
    got = {N: identities.coefficient_sequence(N, 8) for N in PRINTED}
    elapsed = time.perf_counter() - start
    ok = got[5] == PRINTED[5] and got[6] == PRINTED[6] and got[7][:6] == PRINTED[7][:6]
    tail = [(i, g, p) for i, (g, p) in enumerate(zip(got[7], PRINTED[7])) if i >= 6 and g != p]
    detail = f"{elapsed:.3f}s; N=7 terms 7-8 " + ("match" if not tail else f"differ: {tail}")
    report(1, "integral sequences for N = 5, 6, 7", ok and elapsed < SEQUENCE_SECONDS, detail)


def test_criterion_2_functional_equations(report):
    names = [f"square_level_{N}" for N in (2, 3, 4, 5)]
    names += [f"agm_{k}" for k in identities.AGM_KINDS]
    names += ["sextic", "septic"] + [f"extension_{k}" for k in identities.EXTENSION_KINDS]
    bad = [n for n in names if not identities.run_identity(n, ORDER).passed]
    start = time.perf_counter()
    code = main(["verify", "--all", "--terms", str(ORDER), "--json"])
    elapsed = time.perf_counter() - start
    detail = f"{len(names)} equations, full verify {elapsed:.2f}s" + (f"; failing {bad}" if bad else "")
    report(2, "functional equations exact to order 40", not bad and code == 0 and elapsed < SUITE_SECONDS, detail)


def test_criterion_3_operator_reconstruction(report):
    names = [f"operator_h{N}" for N in (2, 5, 6, 7)] + ["operator_quintic"]
    bad = [n for n in names if not identities.run_identity(n, ORDER).passed]
    report(3, "lifted operators equal the stated ones; both quintic routes agree", not bad, ", ".join(bad))


def test_criterion_4_recurrences(report):
    want = {
        5: ["4*n^2-4*n+1", "88*n^2+44*n+10", "500*n^2+1000*n+500"],
        6: ["n^2", "17*n^2+17*n+6", "72*n^2+144*n+72"],
        7: ["9*n^2-6*n+1", "117*n^2+78*n+21", "441*n^2+882*n+441"],
    }
    ok = True
    for N, polys in want.items():
        rec = fuchsian.extract_recurrence(fuchsian.lifted_operator(N))
        ok &= [p.format("n") for p in rec] == polys
        ok &= fuchsian.run_recurrence(rec, 61) == fuchsian.h_series(N, 61).dense(0, 61)
    report(4, "recurrences extracted; recurrence and Frobenius agree to index 60", ok)


def test_criterion_5_q_expansions(report):
    reports = [qforms.verify_covering(N, ORDER) for N in range(2, 8)]
    reports.append(qforms.verify_j_oracle(ORDER))
    reports += [qforms.verify_eta_identity(n, ORDER) for n in qforms.ETA_IDENTITIES]
    for N in range(2, 8):
        reports += qforms.verify_form_equals_eta(N, ORDER)
    head = qforms.j_from_eisenstein(3)
    ok = all(r.passed for r in reports) and head.q_exponent == -1 and head.unit.dense(0, 3) == [1, 744, 196884]
    bad = [r.name for r in reports if not r.passed]
    report(5, "coverings, j oracle and eta identities at order 40", ok, f"{len(reports)} checks" + (f"; failing {bad}" if bad else ""))


def test_criterion_6_combinatorics(report):
    levels = modcurve.genus_zero_levels(100)
    ok = levels == [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25]
    ok &= [modcurve.arithmetic_profile(N).singular_point_count for N in levels] == [3, 3, 3, 4, 4, 4, 4, 4, 6, 6, 6, 6, 8, 8]
    ok &= all(sum(c.width for c in modcurve.cusp_table(N)) == modcurve.arithmetic_profile(N).psi for N in range(1, 201))
    ok &= all(
        f.degree == N for N in range(2, 8) for w in ("phi", "phi_prime") for f in modcurve.lift_cusps(N, w).values()
    )
    t36 = modcurve.cusp_table(36)
    ok &= len(t36) == 12 and sum(c.rational for c in t36) == 6
    ok &= modcurve.fricke_genus_plus(36).genus == 0 and modcurve.fricke_genus_plus(49).genus == 0
    report(6, "genus-zero levels, cusp counts and widths, lifts, Fricke quotients", ok)


def test_criterion_7_properties(report):
    small = st.fractions(min_value=-9, max_value=9, max_denominator=7)
    cs = st.lists(small, min_size=1, max_size=8)

    @settings(max_examples=40, deadline=None, database=None)
    @given(cs, cs, cs)
    def ring(a, b, c):
        x, y, z = (LaurentSeries(v, 8) for v in (a, b, c))
        assert (x * y) * z == x * (y * z) and x * (y + z) == x * y + x * z and x + y == y + x

    @settings(max_examples=40, deadline=None, database=None)
    @given(cs, st.integers(1, 9))
    def sqrt_round_trip(tail, r):
        a = LaurentSeries([r * r] + tail, 8)
        s = laurent_sqrt(a)
        assert (s * s).first_mismatch(a, 8) is None

    @settings(max_examples=20, deadline=None, database=None)
    @given(st.sampled_from([2, 3, 5, 6, 7]))
    def pullback_identity(N):
        L = fuchsian.lifted_operator(N)
        assert L.pullback(RationalFunction(Polynomial.x())) == L

    @settings(max_examples=10, deadline=None, database=None)
    @given(st.sampled_from([6, 7]), st.integers(12, 48))
    def branch(N, order):
        b = identities.solve_branch(N, order)
        other = b.kappa / b.zprime
        for got, want in ((b.z + other, b.S), (b.z * other, b.P)):
            assert got.first_mismatch(want, min(got.prec, want.prec)) is None

    failures = []
    for check in (ring, sqrt_round_trip, pullback_identity, branch):
        try:
            check()
        except Exception as exc:  # report every property, then fail
            failures.append(f"{check.__name__}: {exc}")
    report(7, "randomized property suites", not failures, "; ".join(failures))
