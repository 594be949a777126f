"""Exact rational Gaussian elimination.

Matrices are lists of rows. Pivoting takes the first non-zero entry in the
column, which keeps results deterministic; exact arithmetic needs no
numerical pivoting.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import Q, AlgebraError, to_q

Matrix = list[list[Q]]


class SingularMatrixError(AlgebraError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_q(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Q(1) if r == c else Q(0) for c in range(n)] for r in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Q(0)) for col in cols] for row in a]


def matvec(a: Matrix, v: Sequence) -> list[Q]:
    return [sum((x * y for x, y in zip(row, v)), Q(0)) for row in a]


def rref(matrix: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [list(map(to_q, row)) for row in matrix]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        row_r = m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def det(matrix: Sequence[Sequence]) -> Q:
    m = [list(map(to_q, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    result = Q(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    n = len(matrix)
    aug = [list(map(to_q, row)) + ident for row, ident in zip(matrix, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in red]


def solve_system(a: Sequence[Sequence], b: Sequence) -> tuple[str, list[Q] | None, list[list[Q]]]:
    """Classify and solve ``a x = b``.

    Returns ``(kind, particular, kernel_basis)`` with ``kind`` one of
    ``"unique"``, ``"affine"``, ``"none"``. Free variables of the particular
    solution are set to zero; kernel vectors are ordered by free column.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return "none", None, []
    particular = [Q(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = red[r][ncols]
    kernel = nullspace_from_rref(red, pivots, ncols)
    return ("affine" if kernel else "unique"), particular, kernel


def nullspace_from_rref(red: Matrix, pivots: list[int], ncols: int) -> list[list[Q]]:
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def nullspace(a: Sequence[Sequence]) -> list[list[Q]]:
    ncols = len(a[0]) if a else 0
    red, pivots = rref(a)
    return nullspace_from_rref(red, pivots, ncols)


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1])
