"""Rational motivic zeta functions of purely wild induced tori.

The generating series over tame levels d, weighted by the class of the
level-d special fibre (L-1)*L^(n-1) and by L^ord(d), collapses into a
single rational function whose unique pole sits at s = (n-1)/2, the
tame conductor, with order one.
"""

from tamebc import (
    MotivicPoly,
    Res,
    order_function,
    pole_report,
    render_cyclo,
    zeta_induced_torus,
)

L = MotivicPoly.L

for n, p in [(2, 2), (4, 2), (8, 2), (3, 3), (9, 3), (5, 5)]:
    z = zeta_induced_torus(n, p)
    report = pole_report(z)
    print(f"n = {n}, p = {p}:")
    print(f"  Z(z) = {render_cyclo(z)}")
    print(f"  pole: {report}")

print()
print("cross-check for n = 4: expanding the closed form and summing the")
print("defining series term by term agree (coefficients of z^d):")
z = zeta_induced_torus(4, 2)
series = z.expand(9)
for d in range(1, 10):
    if d % 2 == 0:
        continue
    direct = (L() - 1) * L(3) * L(order_function(Res(4), d))
    match = "ok" if series.get(d) == direct else "MISMATCH"
    print(f"  z^{d}: {series.get(d)!r}   [{match}]")
