"""Cusps of X0(36), and how the cusps of X0(6) lift to it.

    python demos/cusps_of_x0_36.py
"""

from modhyp.modcurve import arithmetic_profile, cusp_table, format_formal_sum, fricke_genus_plus, lift_cusps

p = arithmetic_profile(36)
print(f"X0(36): index {p.psi}, {p.sigma_infty} cusps, genus {p.genus}")
for c in cusp_table(36):
    print(f"   {c.label():<12} width {c.width:<3} {'rational' if c.rational else ''}")

fq = fricke_genus_plus(36)
print(f"\nFixed points of the Fricke involution: {fq.a}; quotient genus {fq.genus}")

for which in ("phi", "phi_prime"):
    print(f"\nFibres of the {which} map X0(36) -> X0(6):")
    for key, fibre in lift_cusps(6, which).items():
        print(f"   {fibre.base.label()} <- {format_formal_sum(fibre.points)}")
