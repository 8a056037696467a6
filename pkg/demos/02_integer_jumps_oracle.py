"""Brute-force verification of the integer jumps from first principles.

For a totally ramified extension of degree n defined by an Eisenstein
polynomial P, the integer jumps at a tame level d = 1 mod n are the
elementary-divisor valuations of an explicit relation matrix over the
extension ring with uniformizer pi_d (pi = pi_d^d).  The oracle builds
the matrix, runs Smith reduction over the truncated valuation ring, and
must agree with the closed form floor(d*v/n) for v = 0..n-1, whatever
Eisenstein polynomial or unimodular change of generators is used.
"""

from tamebc import (
    DVRConfig,
    EisensteinPoly,
    TameContext,
    TruncSeries,
    cokernel_d_jumps_oracle,
    d_jumps_closed_form,
    eisenstein_rescale,
)

config = DVRConfig(p=2, precision=128)

print("pure polynomial t^n - pi, various (n, d):")
for n, d in [(2, 3), (3, 7), (4, 9), (5, 11)]:
    poly = EisensteinPoly.pure(n, config)
    oracle = cokernel_d_jumps_oracle(poly, TameContext(d, config))
    closed = d_jumps_closed_form(n, d)
    print(f"  n={n}, d={d}: oracle {{{oracle}}} closed form {{{closed}}}")

print()
print("a lopsided Eisenstein polynomial gives the same answer:")
pi = TruncSeries.uniformizer(config)
poly = EisensteinPoly([-pi, pi + pi * pi, pi], config)  # t^3 + ... - pi
oracle = cokernel_d_jumps_oracle(poly, TameContext(7, config))
print(f"  n=3, d=7: {{{oracle}}}")

print()
print("the rescaled defining polynomial over the extension:")
rescaled = eisenstein_rescale(EisensteinPoly.pure(2, config), TameContext(5, config))
print(f"  t^2 - pi at d=5 becomes t^2 + ({rescaled.coeffs[0]!r})")

print()
print("changing the generators by a unimodular matrix leaves the")
print("elementary divisors alone:")
for change in ([[1, 3], [0, 1]], [[2, 1], [1, 1]], [[0, 1], [1, 0]]):
    poly = EisensteinPoly.pure(2, config)
    out = cokernel_d_jumps_oracle(poly, TameContext(9, config), basis_change=change)
    print(f"  change {change}: {{{out}}}")
