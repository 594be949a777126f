from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import seeds, small_q
from oracles import det_oracle, rref_oracle
from ncpoly import linalg
from ncpoly.algebra import Q


def random_matrix(rng: random.Random, rows: int, cols: int, rank: int | None = None):
    if rank is None:
        return [[Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)]
    left = random_matrix(rng, rows, rank)
    right = random_matrix(rng, rank, cols)
    return linalg.matmul(left, right)


@given(seeds, st.integers(1, 5), st.integers(1, 5), st.integers(0, 5))
def test_rref_matches_oracle(seed, rows, cols, rank):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols, min(rank, rows, cols) or None)
    red, pivots = linalg.rref(m)
    expected, expected_pivots = rref_oracle(m)
    assert pivots == expected_pivots
    assert [[Q(v) for v in row] for row in red] == [[Q(v.numerator, v.denominator) for v in row] for row in expected]


@given(seeds, st.integers(1, 5))
def test_det_matches_oracle(seed, n):
    m = random_matrix(random.Random(seed), n, n)
    assert linalg.det(m) == det_oracle(m)


@given(seeds, st.integers(1, 4))
def test_inverse(seed, n):
    m = random_matrix(random.Random(seed), n, n)
    if linalg.det(m) == 0:
        with pytest.raises(linalg.SingularMatrixError):
            linalg.inverse(m)
    else:
        assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(n)


@given(seeds, st.integers(1, 5), st.integers(1, 5), st.integers(1, 4), st.lists(small_q, min_size=5, max_size=5))
def test_solve_system_sound(seed, rows, cols, rank, rhs):
    m = random_matrix(random.Random(seed), rows, cols, min(rank, rows, cols))
    b = rhs[:rows]
    kind, x, kernel = linalg.solve_system(m, b)
    if kind == "none":
        assert linalg.rank(m) < linalg.rank([row + [v] for row, v in zip(m, b)])
        return
    assert linalg.matvec(m, x) == b
    for v in kernel:
        assert linalg.matvec(m, v) == [0] * rows
    assert len(kernel) == cols - linalg.rank(m)
    assert linalg.rank(kernel) == len(kernel) if kernel else True
    assert (kind == "unique") == (not kernel)


def test_nullspace_basis_order():
    m = [[0, 0, 1, 0], [0, 0, 0, 1]]
    assert linalg.nullspace(m) == [[1, 0, 0, 0], [0, 1, 0, 0]]
