"""Integer lattices with an action of a finite abelian group.

A ``GLattice`` is a free Z-module of finite rank together with one
integer matrix per cyclic generator of the group; a ``LatticeMap`` is an
integer matrix intertwining two such actions.  An equivariant map
between lattices of equal rank is an isogeny of the corresponding tori
exactly when its determinant is nonzero, and the order of its cokernel
(the degree of the isogeny) equals the absolute determinant; the module
cross-checks that value against the product of the elementary divisors
of the matrix.

``jumps_non_invariance_demo`` packages the rank-4 example showing that
jump multisets are not isogeny invariants: the induced torus of a
biquadratic extension and a product of a split torus with three
norm-one quadratic tori are connected by an equivariant map of
determinant 16, yet their jump multisets differ.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _intmat
from .errors import NotEquivariant, SpecInvariantViolation
from .jumps import Gm, NormOneQuadratic, Product, Res, torus_jumps

__all__ = [
    "FiniteAbelianGroup",
    "GLattice",
    "LatticeMap",
    "validate",
    "is_isogeny",
    "jumps_non_invariance_demo",
    "klein_four_example_map",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z/m_1 x ... x Z/m_r, each m_i >= 2."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(m) for m in self.factors))
        if not self.factors or any(m < 2 for m in self.factors):
            raise SpecInvariantViolation("cyclic factors must all be >= 2")

    @property
    def order(self) -> int:
        out = 1
        for m in self.factors:
            out *= m
        return out


class GLattice:
    """Free Z-module of finite rank with commuting generator matrices."""

    __slots__ = ("group", "rank", "generators")

    def __init__(self, group: FiniteAbelianGroup, rank: int, generators):
        if rank < 1:
            raise SpecInvariantViolation("rank must be >= 1")
        gens = [_intmat.mat_copy(g) for g in generators]
        if len(gens) != len(group.factors):
            raise SpecInvariantViolation(
                "need one generator matrix per cyclic factor"
            )
        for g in gens:
            if len(g) != rank or any(len(row) != rank for row in g):
                raise SpecInvariantViolation("generator matrix has wrong shape")
        self.group = group
        self.rank = rank
        self.generators = tuple(tuple(tuple(row) for row in g) for g in gens)

    def __eq__(self, other):
        return (
            isinstance(other, GLattice)
            and self.group == other.group
            and self.rank == other.rank
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.group, self.rank, self.generators))


def validate(lat: GLattice) -> bool:
    """True iff the generator matrices commute, have the right orders,
    and are invertible over the rationals."""
    gens = [_intmat.mat_copy(g) for g in lat.generators]
    for g in gens:
        if _intmat.det(g) == 0:
            return False
    for i, g in enumerate(gens):
        power = _intmat.mat_identity(lat.rank)
        for _ in range(lat.group.factors[i]):
            power = _intmat.mat_mul(power, g)
        if not _intmat.mat_eq(power, _intmat.mat_identity(lat.rank)):
            return False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not _intmat.mat_eq(
                _intmat.mat_mul(gens[i], gens[j]), _intmat.mat_mul(gens[j], gens[i])
            ):
                return False
    return True


class LatticeMap:
    """Integer matrix from a source lattice to a target lattice."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: GLattice, target: GLattice, matrix):
        m = _intmat.mat_copy(matrix)
        if len(m) != target.rank or any(len(row) != source.rank for row in m):
            raise SpecInvariantViolation(
                "map matrix must be target_rank x source_rank"
            )
        if source.group != target.group:
            raise SpecInvariantViolation("source and target have different groups")
        self.source = source
        self.target = target
        self.matrix = tuple(tuple(row) for row in m)

    def __eq__(self, other):
        return (
            isinstance(other, LatticeMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def is_equivariant(self) -> bool:
        m = _intmat.mat_copy(self.matrix)
        for gs, gt in zip(self.source.generators, self.target.generators):
            left = _intmat.mat_mul(m, _intmat.mat_copy(gs))
            right = _intmat.mat_mul(_intmat.mat_copy(gt), m)
            if not _intmat.mat_eq(left, right):
                return False
        return True


def is_isogeny(f: LatticeMap):
    """(nonzero-determinant?, cokernel order) for an equivariant map.

    The cokernel order is computed twice, as |det| and as the product of
    the integer elementary divisors, and the two must agree; a singular
    map reports (False, 0).
    """
    if f.source.rank != f.target.rank:
        raise SpecInvariantViolation("isogeny test needs equal ranks")
    if not f.is_equivariant():
        raise NotEquivariant("map does not commute with the group action")
    m = _intmat.mat_copy(f.matrix)
    d = _intmat.det(m)
    if d == 0:
        return False, 0
    divisors = _intmat.smith_diagonal(m)
    order = 1
    for e in divisors:
        order *= e
    if len(divisors) < f.source.rank or order != abs(d):
        raise SpecInvariantViolation(
            f"self-check failed: |det| = {abs(d)} vs divisor product {order}"
        )
    return True, abs(d)


def klein_four_example_map() -> LatticeMap:
    """The rank-4 equivariant map of determinant 16 between the character
    lattices of the biquadratic induced torus and the isogenous product
    of Gm with three norm-one quadratic tori.

    Source: Z (trivial action) + three rank-one lattices where the two
    generators act by the three nontrivial sign patterns.  Target: the
    group ring of Z/2 x Z/2 with basis (e, s, t, st) permuted by left
    multiplication.
    """
    group = FiniteAbelianGroup((2, 2))
    sign_s = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    sign_t = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    source = GLattice(group, 4, (sign_s, sign_t))
    perm_s = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    perm_t = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    target = GLattice(group, 4, (perm_s, perm_t))
    # columns: images of the four source basis vectors in (e, s, t, st)
    matrix = [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ]
    return LatticeMap(source, target, matrix)


def jumps_non_invariance_demo():
    """(jumps of the biquadratic induced torus, jumps of the isogenous
    product, True iff the multisets differ while the connecting map is
    an isogeny)."""
    left = torus_jumps(Res(4))
    right = torus_jumps(
        Product((Gm(), NormOneQuadratic(), NormOneQuadratic(), NormOneQuadratic()))
    )
    ok, order = is_isogeny(klein_four_example_map())
    differ = (left != right) and ok and order > 0
    return left, right, differ
