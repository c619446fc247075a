import random
from fractions import Fraction

import pytest

from qtilt.linalg import Mat, block_diag, in_row_space, left_kernel, rref_with_kernel, row_space_basis, solve


def test_identity_rref():
    a = Mat.identity(2)
    reduced, pivots, kernel = rref_with_kernel(a)
    assert reduced == a
    assert pivots == [0, 1]
    assert kernel.cols == 0


def test_proportional_rows():
    a = Mat.from_rows([[1, 2], [2, 4]])
    reduced, pivots, kernel = rref_with_kernel(a)
    assert pivots == [0]
    assert reduced == Mat.from_rows([[1, 2], [0, 0]])
    assert kernel.cols == 1
    # kernel spanned by (-2, 1)
    assert kernel.col(0) == (Fraction(-2), Fraction(1))
    assert (a * kernel).is_zero()


def test_zero_dimensional_cases():
    for rows, cols in [(0, 0), (0, 3), (3, 0)]:
        a = Mat.zero(rows, cols)
        reduced, pivots, kernel = rref_with_kernel(a)
        assert reduced.rows == rows and reduced.cols == cols
        assert pivots == []
        assert kernel.rows == cols
        assert kernel.cols == cols if rows == 0 else kernel.cols == cols
    assert rref_with_kernel(Mat.zero(0, 3))[2] == Mat.identity(3)


def _random_matrix(rng, rows, cols, span=9):
    return Mat.from_rows(
        [[Fraction(rng.randint(-span, span), rng.choice([1, 1, 1, 2, 3])) for _ in range(cols)]
         for _ in range(rows)]
    )


def _rank_by_column_elimination(a):
    # independent oracle: count independent columns by incremental elimination
    basis = []
    for j in range(a.cols):
        v = [a.entries[i][j] for i in range(a.rows)]
        for b in basis:
            # eliminate using b's leading coordinate
            lead = next(i for i, x in enumerate(b) if x != 0)
            if v[lead]:
                f = v[lead] / b[lead]
                v = [x - f * y for x, y in zip(v, b)]
        if any(x != 0 for x in v):
            basis.append(v)
    return len(basis)


def test_random_rank_nullity_and_kernel_exactness():
    rng = random.Random(7)
    for _ in range(25):
        a = _random_matrix(rng, 6, 9)
        reduced, pivots, kernel = rref_with_kernel(a)
        assert (a * kernel).is_zero()
        assert len(pivots) + kernel.cols == a.cols
        assert len(pivots) == _rank_by_column_elimination(a)


def test_rref_idempotent():
    rng = random.Random(11)
    for _ in range(10):
        a = _random_matrix(rng, 5, 7)
        r1 = rref_with_kernel(a)[0]
        r2 = rref_with_kernel(r1)[0]
        assert r1 == r2


def test_solve_identity_and_zero():
    b = Mat.from_rows([[3], [Fraction(1, 2)]])
    assert solve(Mat.identity(2), b) == b
    assert solve(Mat.zero(2, 2), Mat.from_rows([[1], [0]])) is None
    assert solve(Mat.zero(2, 2), Mat.zero(2, 1)) == Mat.zero(2, 1)


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(Mat.zero(2, 2), Mat.zero(3, 1))


def test_solve_random_consistent_systems():
    rng = random.Random(3)
    for _ in range(20):
        a = _random_matrix(rng, 5, 4)
        x0 = _random_matrix(rng, 4, 2)
        b = a * x0
        x = solve(a, b)
        assert x is not None
        assert a * x == b  # residual exactly zero


def test_left_kernel_and_row_space():
    a = Mat.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    lk = left_kernel(a)
    assert (lk * a).is_zero()
    assert lk.rows == 1
    rs = row_space_basis(a)
    assert rs.rows == 2
    assert in_row_space(Mat.from_rows([[1, 3, 4]]), rs)
    assert not in_row_space(Mat.from_rows([[0, 0, 1]]), rs)


def test_block_diag_and_stack():
    a = Mat.identity(2)
    b = Mat.from_rows([[5]])
    d = block_diag([a, b])
    assert d.rows == 3 and d.cols == 3
    assert d[2, 2] == 5 and d[0, 0] == 1 and d[2, 0] == 0
    assert a.hstack(Mat.zero(2, 1)).cols == 3
    assert a.vstack(Mat.zero(1, 2)).rows == 3
