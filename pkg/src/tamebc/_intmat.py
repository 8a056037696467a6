"""Small exact integer-matrix utilities (no external dependencies).

Matrices are lists of lists of Python ints; everything stays exact.
"""

from __future__ import annotations

from .errors import SpecInvariantViolation


def mat_copy(m):
    return [list(row) for row in m]


def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    if any(len(r) != inner for r in a):
        raise SpecInvariantViolation("matrix shapes do not match")
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_eq(a, b):
    return len(a) == len(b) and all(list(x) == list(y) for x, y in zip(a, b))


def det(m) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise SpecInvariantViolation("determinant needs a square matrix")
    if n == 0:
        return 1
    a = mat_copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_diagonal(m) -> list[int]:
    """Elementary divisors of an integer matrix.

    Returns the nonzero diagonal of the Smith normal form (non-negative,
    each dividing the next), one entry per unit of rank.
    """
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors = []
    top = 0
    while top < rows and top < cols:
        # locate a nonzero entry of minimal absolute value
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        # reduce row and column until the pivot divides them
        while True:
            changed = False
            for i in range(top + 1, rows):
                if a[i][top] % a[top][top] != 0:
                    q = a[i][top] // a[top][top]
                    for j in range(top, cols):
                        a[i][j] -= q * a[top][j]
                    a[top], a[i] = a[i], a[top]
                    changed = True
                    break
            if changed:
                continue
            for j in range(top + 1, cols):
                if a[top][j] % a[top][top] != 0:
                    q = a[top][j] // a[top][top]
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                    for row in a:
                        row[top], row[j] = row[j], row[top]
                    changed = True
                    break
            if not changed:
                break
        p = a[top][top]
        for i in range(top + 1, rows):
            q = a[i][top] // p
            if q:
                for j in range(top, cols):
                    a[i][j] -= q * a[top][j]
        for j in range(top + 1, cols):
            q = a[top][j] // p
            if q:
                for i in range(top, rows):
                    a[i][j] -= q * a[i][top]
        # a pivot must also divide the remaining block for true
        # elementary divisors; if it does not, fold the offending row in
        offender = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, cols):
                a[top][j] += a[offender][j]
            continue
        divisors.append(abs(p))
        top += 1
    return divisors


def is_unimodular(m) -> bool:
    return abs(det(m)) == 1
