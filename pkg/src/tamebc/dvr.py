"""Exact arithmetic in truncated discrete valuation rings.

Elements are power series in a uniformizer pi over the prime field F_p,
truncated at a fixed order N: a ``TruncSeries`` stores the N residues
mod p of pi^0 .. pi^(N-1).  The valuation of a series is the index of
its first nonzero coefficient (N when every stored coefficient is zero,
meaning "zero up to the working precision").

A tame extension of degree d prime to p is modeled by reinterpreting the
uniformizer: pi = pi_d^d, which is legitimate because the residue field
extension is trivial here and all invariants computed downstream are
valuations and lengths.  ``TameContext.embed`` realizes the inclusion by
spreading coefficients to the positions d*i.

On top of the series arithmetic this module provides Eisenstein
polynomials, their rescaling into a tame extension, Smith normal form
over the truncated ring, and the brute-force cokernel computation whose
elementary-divisor exponents are the integer base-change jumps at level
d for the induced torus of a degree-n totally ramified extension (only
available for d = 1 mod n, where an explicit integral model exists).

Precision policy: the truncation order N is fixed per configuration
(default 64) and operations raise ``PrecisionExhausted`` instead of
silently returning undetermined valuations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import _intmat
from .errors import (
    ConfigMismatch,
    CongruenceViolation,
    NonUnitDivisor,
    PrecisionExhausted,
    SpecInvariantViolation,
)
from .jumps import DJumps

__all__ = [
    "DEFAULT_PRECISION",
    "DVRConfig",
    "TruncSeries",
    "TameContext",
    "EisensteinPoly",
    "ElemDivisors",
    "series_ops",
    "eisenstein_rescale",
    "smith_normal_form",
    "cokernel_d_jumps_oracle",
]

DEFAULT_PRECISION = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class DVRConfig:
    """Residue characteristic p and truncation order N of a working ring."""

    p: int
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not _is_prime(self.p):
            raise SpecInvariantViolation(f"residue characteristic {self.p} is not prime")
        if self.precision < 2:
            raise SpecInvariantViolation("precision must be at least 2")


class TruncSeries:
    """Element of F_p[[pi]] / pi^N, stored as N coefficients mod p."""

    __slots__ = ("coeffs", "config")

    def __init__(self, coeffs, config: DVRConfig):
        n = config.precision
        p = config.p
        data = [0] * n
        for i, c in enumerate(coeffs):
            if i >= n:
                break
            data[i] = c % p
        self.coeffs = tuple(data)
        self.config = config

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, config: DVRConfig) -> "TruncSeries":
        return cls((), config)

    @classmethod
    def one(cls, config: DVRConfig) -> "TruncSeries":
        return cls((1,), config)

    @classmethod
    def from_int(cls, value: int, config: DVRConfig) -> "TruncSeries":
        return cls((value,), config)

    @classmethod
    def uniformizer(cls, config: DVRConfig, power: int = 1) -> "TruncSeries":
        if power < 0:
            raise SpecInvariantViolation("uniformizer power must be >= 0")
        if power >= config.precision:
            raise PrecisionExhausted(
                f"pi^{power} is indistinguishable from 0 at precision {config.precision}"
            )
        return cls((0,) * power + (1,), config)

    # -- structure ---------------------------------------------------------

    @property
    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.config.precision

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return bool(self.coeffs[0])

    def _check_config(self, other: "TruncSeries"):
        if self.config != other.config:
            raise ConfigMismatch(
                f"operands over {self.config} and {other.config}"
            )

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_config(other)
        return TruncSeries(
            (a + b for a, b in zip(self.coeffs, other.coeffs)), self.config
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries((-a for a in self.coeffs), self.config)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_config(other)
        n = self.config.precision
        p = self.config.p
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
        return TruncSeries(out, self.config)

    def unit_divide(self, other: "TruncSeries") -> "TruncSeries":
        """Exact division by a unit of the ring."""
        self._check_config(other)
        if not other.is_unit():
            raise NonUnitDivisor(
                f"divisor has valuation {other.valuation} > 0"
            )
        n = self.config.precision
        p = self.config.p
        inv0 = pow(other.coeffs[0], -1, p)
        out = [0] * n
        for i in range(n):
            acc = self.coeffs[i]
            for j in range(1, i + 1):
                b = other.coeffs[j]
                if b:
                    acc -= b * out[i - j]
            out[i] = (acc * inv0) % p
        return TruncSeries(out, self.config)

    def shift_up(self, k: int) -> "TruncSeries":
        """Multiply by pi^k."""
        if k < 0:
            raise SpecInvariantViolation("shift_up needs k >= 0")
        return TruncSeries((0,) * k + self.coeffs, self.config)

    def shift_down(self, k: int) -> "TruncSeries":
        """Exact division by pi^k; the low k coefficients must vanish.

        The top k coefficients of the result are taken as zero, i.e. the
        quotient is only known mod pi^(N-k); callers must keep the
        valuations they extract below that bound.
        """
        if k < 0:
            raise SpecInvariantViolation("shift_down needs k >= 0")
        if any(self.coeffs[:k]):
            raise SpecInvariantViolation(
                f"series with valuation {self.valuation} is not divisible by pi^{k}"
            )
        return TruncSeries(self.coeffs[k:], self.config)

    def exact_divide(self, other: "TruncSeries") -> "TruncSeries":
        """Divide by pi^v * unit where v is the divisor's valuation."""
        e = other.valuation
        if e >= self.config.precision:
            raise NonUnitDivisor("division by a series that vanishes to precision")
        return self.shift_down(e).unit_divide(other.shift_down(e))

    # -- comparison and display --------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.config == other.config
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.config))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("pi" if c == 1 else f"{c}*pi")
            else:
                parts.append(f"pi^{i}" if c == 1 else f"{c}*pi^{i}")
        return " + ".join(parts)


def series_ops(a: TruncSeries, b: TruncSeries, kind: str) -> TruncSeries:
    """Dispatch helper mirroring the operator API by name."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "unit-divide":
        return a.unit_divide(b)
    raise SpecInvariantViolation(f"unknown series operation {kind!r}")


@dataclass(frozen=True)
class TameContext:
    """The tame extension of degree d, with uniformizer pi_d, pi = pi_d^d."""

    d: int
    base: DVRConfig

    def __post_init__(self):
        if self.d < 1:
            raise SpecInvariantViolation("tame degree must be >= 1")
        if gcd(self.d, self.base.p) != 1:
            raise SpecInvariantViolation(
                f"tame degree {self.d} is divisible by the residue characteristic {self.base.p}"
            )

    @property
    def extension_config(self) -> DVRConfig:
        # same p and truncation order, read pi_d-adically
        return self.base

    def embed(self, s: TruncSeries) -> TruncSeries:
        """Image of a base element: coefficient of pi^i moves to pi_d^(d*i)."""
        if s.config != self.base:
            raise ConfigMismatch("series does not live over the context base")
        n = self.base.precision
        out = [0] * n
        for i, c in enumerate(s.coeffs):
            if c and i * self.d < n:
                out[i * self.d] = c
        return TruncSeries(out, self.extension_config)

    def uniformizer(self, power: int = 1) -> TruncSeries:
        return TruncSeries.uniformizer(self.extension_config, power)


class EisensteinPoly:
    """Monic Eisenstein polynomial t^n + a_(n-1) t^(n-1) + ... + a_0.

    The coefficients a_0 .. a_(n-1) are stored; a_0 has valuation exactly
    one and the others valuation at least one.
    """

    __slots__ = ("coeffs", "config")

    def __init__(self, coeffs, config: DVRConfig):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise SpecInvariantViolation("Eisenstein polynomial needs degree >= 1")
        for c in coeffs:
            if not isinstance(c, TruncSeries) or c.config != config:
                raise ConfigMismatch("coefficient over a different configuration")
        if coeffs[0].valuation != 1:
            raise SpecInvariantViolation(
                f"constant coefficient has valuation {coeffs[0].valuation}, need exactly 1"
            )
        for i, c in enumerate(coeffs[1:], start=1):
            if c.valuation < 1:
                raise SpecInvariantViolation(
                    f"coefficient of t^{i} is a unit; polynomial is not Eisenstein"
                )
        self.coeffs = coeffs
        self.config = config

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @classmethod
    def pure(cls, n: int, config: DVRConfig) -> "EisensteinPoly":
        """The polynomial t^n - pi."""
        if n < 1:
            raise SpecInvariantViolation("degree must be >= 1")
        a0 = -TruncSeries.uniformizer(config)
        rest = [TruncSeries.zero(config)] * (n - 1)
        return cls([a0] + rest, config)

    def __eq__(self, other):
        return (
            isinstance(other, EisensteinPoly)
            and self.config == other.config
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        parts = [f"t^{self.degree}"]
        for i in range(self.degree - 1, -1, -1):
            c = self.coeffs[i]
            if not c.is_zero():
                mono = "" if i == 0 else ("*t" if i == 1 else f"*t^{i}")
                parts.append(f"({c!r}){mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ElemDivisors:
    """Sorted exponents e_1 <= ... <= e_r of the Smith form diagonal."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(sorted(self.exponents)))

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)


def eisenstein_rescale(P: EisensteinPoly, ctx: TameContext) -> EisensteinPoly:
    """Renormalize an Eisenstein polynomial into the tame extension.

    For d = 1 mod n, substituting pi_d^((d-1)/n) * t into P and dividing
    by pi_d^(d-1) yields a new monic Eisenstein polynomial Q over the
    extension; this function computes Q.
    """
    n = P.degree
    d = ctx.d
    if P.config != ctx.base:
        raise ConfigMismatch("polynomial does not live over the context base")
    if (d - 1) % n != 0:
        raise CongruenceViolation(f"need d = 1 mod {n}, got d = {d}")
    if d >= ctx.base.precision:
        raise PrecisionExhausted(
            f"tame degree {d} reaches the truncation order {ctx.base.precision}"
        )
    m = (d - 1) // n
    out = []
    for i, a in enumerate(P.coeffs):
        lifted = ctx.embed(a)
        # multiply by pi_d^(i*m), divide by pi_d^(d-1); net shift is down
        out.append(lifted.shift_down((d - 1) - i * m))
    return EisensteinPoly(out, ctx.extension_config)


# ---------------------------------------------------------------------------
# linear algebra over the truncated ring
# ---------------------------------------------------------------------------

def _check_matrix(M):
    if not M or not M[0]:
        raise SpecInvariantViolation("matrix must be nonempty")
    config = M[0][0].config
    for row in M:
        if len(row) != len(M[0]):
            raise SpecInvariantViolation("ragged matrix")
        for entry in row:
            if not isinstance(entry, TruncSeries):
                raise SpecInvariantViolation("matrix entries must be TruncSeries")
            if entry.config != config:
                raise ConfigMismatch("matrix entries over different configurations")
    return config


def _min_valuation_position(M, top):
    best = None
    pos = None
    for i in range(top, len(M)):
        for j in range(top, len(M[0])):
            v = M[i][j].valuation
            if best is None or v < best:
                best = v
                pos = (i, j)
    return best, pos


def smith_normal_form(M) -> ElemDivisors:
    """Valuations of the Smith-form diagonal of a matrix over the ring.

    At each step the entry of minimal valuation becomes the pivot (over
    a valuation ring it divides every remaining entry), its row and
    column are cleared, and its valuation is recorded.  Raises
    ``PrecisionExhausted`` if a block that should still carry pivots
    vanishes to precision, since its divisors are then undetermined.
    """
    config = _check_matrix(M)
    N = config.precision
    work = [list(row) for row in M]
    steps = min(len(work), len(work[0]))
    exponents = []
    for top in range(steps):
        v, pos = _min_valuation_position(work, top)
        if v >= N:
            raise PrecisionExhausted(
                f"pivot {top} has valuation >= {N}; divisors undetermined"
            )
        i, j = pos
        work[top], work[i] = work[i], work[top]
        for row in work:
            row[top], row[j] = row[j], row[top]
        pivot = work[top][top]
        exponents.append(v)
        for i in range(top + 1, len(work)):
            entry = work[i][top]
            if entry.is_zero():
                continue
            q = entry.exact_divide(pivot)
            work[i] = [x - q * y for x, y in zip(work[i], work[top])]
        for j in range(top + 1, len(work[0])):
            entry = work[top][j]
            if entry.is_zero():
                continue
            q = entry.exact_divide(pivot)
            for i in range(top, len(work)):
                work[i][j] = work[i][j] - q * work[i][top]
    return ElemDivisors(tuple(exponents))


def column_echelon(columns):
    """Reduce a list of columns to a staircase basis of their span.

    Performs unimodular column operations over the truncated ring.  The
    returned list of (column, pivot_row) pairs is ordered so that each
    pivot row is zero in all later basis columns, which makes sequential
    back-substitution exact.  Columns that vanish to precision are
    dropped.
    """
    if not columns:
        return []
    remaining = [list(c) for c in columns]
    nrows = len(remaining[0])
    N = remaining[0][0].config.precision
    done_rows = set()
    basis = []
    while remaining:
        best = None
        pos = None
        for ci, col in enumerate(remaining):
            for r in range(nrows):
                if r in done_rows:
                    continue
                v = col[r].valuation
                if best is None or v < best:
                    best = v
                    pos = (ci, r)
        if best is None or best >= N:
            break
        ci, r = pos
        pivot_col = remaining.pop(ci)
        pivot = pivot_col[r]
        for col in remaining:
            entry = col[r]
            if entry.is_zero():
                continue
            q = entry.exact_divide(pivot)
            for k in range(nrows):
                col[k] = col[k] - q * pivot_col[k]
        basis.append((pivot_col, r))
        done_rows.add(r)
    return basis


def coordinates_in_echelon(basis, column):
    """Coordinates of a column in an echelon basis, or None if outside.

    ``basis`` is the output of :func:`column_echelon`.  Membership is
    decided up to the working precision.
    """
    col = list(column)
    coords = []
    for bcol, r in basis:
        target = col[r]
        pivot = bcol[r]
        if target.is_zero():
            coords.append(TruncSeries.zero(target.config))
            continue
        if target.valuation < pivot.valuation:
            return None
        c = target.exact_divide(pivot)
        coords.append(c)
        for k in range(len(col)):
            col[k] = col[k] - c * bcol[k]
    if any(not x.is_zero() for x in col):
        return None
    return coords


# ---------------------------------------------------------------------------
# the cokernel oracle
# ---------------------------------------------------------------------------

def _poly_mod(coeffs, Q: EisensteinPoly):
    """Remainder of a polynomial (list of TruncSeries, low to high) mod Q."""
    n = Q.degree
    work = list(coeffs)
    while len(work) > n:
        lead = work.pop()
        k = len(work)  # popped term was lead * t^k
        if lead.is_zero():
            continue
        # t^k = -(a_0 + ... + a_(n-1) t^(n-1)) * t^(k-n) mod Q
        for i, a in enumerate(Q.coeffs):
            work[k - n + i] = work[k - n + i] - lead * a
    while len(work) < n:
        work.append(TruncSeries.zero(Q.config))
    return work


def cokernel_d_jumps_oracle(
    P: EisensteinPoly, ctx: TameContext, basis_change=None
) -> DJumps:
    """Integer jumps at level d by brute-force cokernel computation.

    Builds the matrix expressing the generators pi_d^(v*(d-1)/n) * t^v of
    the image of O_L tensor O_K(d) inside O_K(d)[t]/(Q) on the monomial
    basis, optionally composed with a unimodular change of generators,
    and returns the valuations of its Smith-form diagonal.
    """
    Q = eisenstein_rescale(P, ctx)
    n = P.degree
    d = ctx.d
    m = (d - 1) // n
    ext = ctx.extension_config
    if basis_change is None:
        change = _intmat.mat_identity(n)
    else:
        change = [list(row) for row in basis_change]
        if len(change) != n or any(len(row) != n for row in change):
            raise SpecInvariantViolation("basis change must be n x n")
        if not _intmat.is_unimodular(change):
            raise SpecInvariantViolation("basis change matrix is not unimodular")
    columns = []
    for j in range(n):
        # generator sum_v change[v][j] * pi_d^(v*m) * t^v, reduced mod Q
        poly = [TruncSeries.zero(ext) for _ in range(n)]
        for v in range(n):
            c = change[v][j]
            if c:
                poly[v] = TruncSeries.from_int(c, ext) * ctx.uniformizer(v * m)
        columns.append(_poly_mod(poly, Q))
    matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    divisors = smith_normal_form(matrix)
    return DJumps(divisors.exponents, d)
