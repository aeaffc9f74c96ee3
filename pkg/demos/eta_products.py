"""q-expansions from eta products: the level-6 Hauptmodul, the weight-one
form h6, and the covering x6 -> j checked against E4^3 / Delta.

    python demos/eta_products.py
"""

from modhyp.qforms import (
    EtaProduct,
    eta_product_qexp,
    form_qexp,
    h_of_hauptmodul,
    j_from_eisenstein,
    verify_covering,
)


def show(cs):
    return "[" + ", ".join(str(c) for c in cs) + "]"


x6 = eta_product_qexp(EtaProduct.parse("72*[2][6]^5/[1]^5[3]"), 8)
print("x6 = q^%s * %s" % (x6.q_exponent, show(x6.unit.dense(0, 8))))

print("\nj from E4^3/Delta:", show(j_from_eisenstein(4).unit.dense(0, 4)))
print(verify_covering(6, 40).line())

eta_side = form_qexp(6, 10)
series_side = h_of_hauptmodul(6, 10)
print("\nh6 as an eta product :", show(eta_side.unit.dense(0, 8)))
print("h6 from its 2F1 route:", show(series_side.unit.dense(0, 8)))
