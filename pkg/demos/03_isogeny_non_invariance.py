"""Jumps are not isogeny invariants: the biquadratic example.

The character lattice of the induced torus of a biquadratic extension
is the group ring of Z/2 x Z/2.  Splitting off the four sign characters
gives an equivariant map from the lattice of Gm x (three quadratic
norm-one tori); its determinant is 16, so the tori are isogenous, yet
their jump multisets differ.  (Their conductors happen to agree.)
"""

from tamebc import (
    is_isogeny,
    jumps_non_invariance_demo,
    klein_four_example_map,
    tame_conductor,
    validate,
)

connecting = klein_four_example_map()
print("source lattice valid:", validate(connecting.source))
print("target lattice valid:", validate(connecting.target))
print("map matrix rows:", [list(r) for r in connecting.matrix])

ok, degree = is_isogeny(connecting)
print(f"isogeny: {ok}, cokernel order (= |det|, cross-checked by Smith "
      f"normal form): {degree}")

left, right, differ = jumps_non_invariance_demo()
print()
print(f"jumps of the induced torus:      {{{left}}}")
print(f"jumps of the isogenous product:  {{{right}}}")
print(f"multisets differ: {differ}")
print(f"conductors: {tame_conductor(left)} vs {tame_conductor(right)} "
      "(equal here, an accident of this example)")
