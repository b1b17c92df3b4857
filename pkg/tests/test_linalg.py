from fractions import Fraction as F

import pytest

from precourant import linalg


def test_rank_and_nullspace():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(m) == 2
    (v,) = linalg.nullspace(m)
    assert all(sum(F(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_solve_exact():
    a = [[2, 1], [1, 3]]
    x = linalg.solve(a, [F(1), F(2)])
    assert x == [F(1, 5), F(3, 5)]


def test_solve_inconsistent():
    with pytest.raises(linalg.InconsistentSystem):
        linalg.solve([[1, 1], [2, 2]], [1, 3])


def test_inverse_roundtrip():
    a = [[F(1, 2), 3, 0], [0, 1, F(-1, 3)], [2, 0, 1]]
    inv = linalg.inverse(a)
    ident = linalg.matmul(a, inv)
    assert ident == [[F(int(i == j)) for j in range(3)] for i in range(3)]


def test_inverse_singular():
    with pytest.raises(linalg.InconsistentSystem):
        linalg.inverse([[1, 2], [2, 4]])


def test_left_inverse_tall():
    a = [[1, 0], [0, 1], [1, 1]]
    li = linalg.left_inverse(a)
    assert linalg.matmul(li, a) == [[1, 0], [0, 1]]
