"""Build h5 from the j-line operator and watch the quintic equation close.

    python demos/quintic_equation.py
"""

from fractions import Fraction

from modhyp import data
from modhyp.exact import LaurentSeries, Polynomial, RationalFunction, pow_unit, series_compose
from modhyp.fuchsian import extract_recurrence, h_series, lifted_operator, singular_points


def show(cs):
    return "[" + ", ".join(str(c) for c in cs) + "]"


L = lifted_operator(5)
print("Operator on the x5-line, lifted from 2F1(1/12, 5/12; 1):")
print("  ", L.format("z"))
for sp in singular_points(L):
    print("   singular point", sp.describe("z"))

print("\nIts three-term recurrence, oldest coefficient first:")
for p in extract_recurrence(L):
    print("  ", p.format("n"))

h5 = h_series(5, 12)
print("\nFirst coefficients of h5, scaled by 500^n:")
print("  ", [int(h5[n] * 500**n) for n in range(8)])

# Now compare h5(x A(x)) with 5 A(x)^(-1/2) h5(x^5 / A(x)).
td = data.transform_data(5)
n = 20
h5 = h_series(5, n)
lhs = series_compose(h5, LaurentSeries.from_polynomial(td.R, n))
A = LaurentSeries.from_polynomial(td.Sprime, n)
arg = LaurentSeries.from_ratfun(RationalFunction(Polynomial.x() ** 5, td.Sprime), n)
rhs = 5 * pow_unit(A, Fraction(-1, 2)) * series_compose(h5, arg)
print("\nLeft side :", show(lhs.dense(0, 5)))
print("Right side:", show(rhs.dense(0, 5)))
print("agree to x^19:", lhs.first_mismatch(rhs, n) is None)
