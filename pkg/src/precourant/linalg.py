"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction` (ints are accepted
and promoted). Nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class InconsistentSystem(ValueError):
    """Raised when ``A x = b`` has no exact solution."""


def to_fractions(m: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in m]


def row_echelon(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = to_fractions(m)
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        row_r = [v * inv for v in a[r]]
        a[r] = row_r
        nz = [j for j in range(c, n_cols) if row_r[j] != 0]
        for i in range(n_rows):
            if i == r:
                continue
            f = a[i][c]
            if f == 0:
                continue
            row_i = a[i]
            for j in nz:
                row_i[j] -= f * row_r[j]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not len(m[0]):
        return 0
    return len(row_echelon(m)[1])


def nullspace(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``."""
    if not m:
        return []
    n_cols = len(m[0])
    red, pivots = row_echelon(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """One exact solution of ``a x = b``; raises InconsistentSystem if none."""
    n_cols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = row_echelon(aug)
    if n_cols in pivots:
        raise InconsistentSystem("system has no solution")
    x = [Fraction(0)] * n_cols
    for i, p in enumerate(pivots):
        x[p] = red[i][n_cols]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = row_echelon(aug)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise InconsistentSystem("matrix is singular")
    return [row[n:] for row in red]


def left_inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """``(a^T a)^{-1} a^T`` for a matrix of full column rank."""
    at = transpose(to_fractions(a))
    return matmul(inverse(matmul(at, a)), at)
