"""The sextic equation for h6 is two-valued: z and z' are the two roots of
w^2 - S(t) w + P(t) = 0 with S, P polynomials in the Hauptmodul of X0+(36).
Expand the small root at t = infinity and check the equation there.

    python demos/sextic_branch.py
"""

from modhyp.identities import build_cusp_prefactor, solve_branch, verify_sextic

b = solve_branch(6, 16)
print("z  =", b.z)
print("z' =", b.zprime)

pref = build_cusp_prefactor(6)
print("\nPrefactor assembled from the cusps of X0(6):")
print("  ", pref.format())
for f, g in zip(pref.numerator, pref.denominator):
    print(f"   cusp at x6 = {f.location}: width {f.width}, exponents {f.exponent} over {g.exponent}")

E = b.z**6 / b.zprime * (b.z + 9) ** 3 / (b.zprime + 9) ** 2 * (b.z + 8) ** 2 / (b.zprime + 8) ** 3
print("\nLeading coefficient of the prefactor:", E.leading, "= 6^12" if E.leading == 6**12 else "")

for order in (10, 40, 64):
    print(verify_sextic(order).line())
