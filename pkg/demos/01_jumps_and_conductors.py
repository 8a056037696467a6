"""Jump multisets, integer jumps, order functions, and tame conductors.

The library attaches to each torus built from induction atoms a sorted
multiset of rational jumps in [0,1).  At every tame level d the jumps
collapse to integers by counting inside the half-open intervals
[i/d, (i+1)/d); summing those integers gives the order function, and
summing the rational jumps themselves gives the tame conductor.
"""

from tamebc import (
    Gm,
    NormOneQuadratic,
    Product,
    Res,
    ResQuot,
    edixhoven_graded,
    order_function,
    order_recursion_check,
    tame_conductor,
    torus_jumps,
)

for spec, label in [
    (Gm(), "split torus"),
    (Res(4), "degree-4 induced torus"),
    (ResQuot(4), "its quotient by the diagonal"),
    (Product((Gm(), NormOneQuadratic())), "Gm x quadratic norm-one"),
]:
    jumps = torus_jumps(spec)
    print(f"{label:34s} jumps = {{{jumps}}}  conductor = {tame_conductor(jumps)}")

print()
print("integer jumps of the degree-3 induced torus at small tame levels:")
jumps3 = torus_jumps(Res(3))
for d in (1, 2, 4, 5, 7):
    graded = edixhoven_graded(jumps3, d)
    print(f"  d = {d}: {{{graded}}}  order = {graded.order()}")

print()
print("the order function grows linearly along d -> d + q*n with slope")
print("n * conductor; a few spot checks of the recursion:")
for n, alpha, q in [(2, 1, 2), (3, 1, 2), (5, 7, 4)]:
    ok = order_recursion_check(Res(n), alpha, q)
    lhs = order_function(Res(n), alpha + q * n)
    print(f"  n={n}: ord({alpha} + {q}*{n}) = {lhs}  recursion holds: {ok}")
