"""How gluing interacts with base change, on explicit ring slices.

Gluing the Eisenstein point of the affine line over the valuation ring
down to the base point produces a subring A' = O_K + (P) of O_K[t] that
behaves well: forming A' commutes with any base change, and 1, t, ...,
t^(n-1) generate O_K[t] as an A'-module.

Identifying two points of the special fibre instead produces a subring
that does NOT commute with reduction to the residue field: the Tor
obstruction is one-dimensional, and the element pi*t - pi witnesses a
nonzero nilpotent in the reduced glued ring.
"""

from tamebc import (
    DVRConfig,
    EisensteinPoly,
    PolyAlgebra,
    TameContext,
    TruncSeries,
    TwoPointsGluing,
    WildPointGluing,
    base_change_commutes,
    fiber_membership,
    generator_check,
    nilpotent_witness,
    tor_defect,
)

config = DVRConfig(p=2, precision=64)
algebra = PolyAlgebra(config, degree_bound=12)
pi = TruncSeries.uniformizer(config)
one = TruncSeries.one(config)
zero = TruncSeries.zero(config)

two = TwoPointsGluing(algebra)
print("two-points gluing (identify t=0 and t=1 on the special fibre):")
for label, poly in [
    ("t^2 - t", algebra.polynomial([zero, -one, one])),
    ("pi*t - pi", algebra.polynomial([-pi, pi])),
    ("t - 1", algebra.polynomial([-one, one])),
]:
    print(f"  {label:10s} member: {fiber_membership(poly, two)}")
print("  tor defect:", tor_defect(two))
print("  base change to k:", base_change_commutes(two, "k"))
print("  nilpotent witness for pi*t - pi:", tuple(nilpotent_witness(two)))

print()
print("wild-point gluings (Eisenstein point glued to the base):")
for n in (2, 3, 4):
    spec = WildPointGluing(algebra, EisensteinPoly.pure(n, config))
    print(f"  degree {n}: tor defect {tor_defect(spec)},",
          f"base change to k {base_change_commutes(spec, 'k')},",
          f"to K(5) {base_change_commutes(spec, TameContext(5, config))},",
          f"module generators ok: {generator_check(spec)}")
