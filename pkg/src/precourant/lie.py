"""Structure-constant Lie algebras with a parabolic grading.

Everything is exact: coordinates are :class:`fractions.Fraction` and the
structure constants of the shipped builders are integers. Vectors are plain
sequences of length ``dim`` in the fixed basis ``{b_i}``, with
``{b_i, b_j} = sum_k c[i][j][k] b_k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg

ZERO = Fraction(0)


def _frac_array(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(ZERO)
    return a


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """A finite-dimensional Lie algebra given by exact structure constants.

    Construction validates antisymmetry, the Jacobi identity and
    nondegeneracy of the Killing form; anything failing is rejected with
    ValueError, so every instance in circulation is semisimple.
    """

    dim: int
    structure_constants: np.ndarray
    basis_names: tuple[str, ...] = ()
    killing_matrix: np.ndarray = field(init=False, repr=False)
    # (i, j) -> [(k, c_ijk), ...] over nonzero constants only
    _table: dict = field(init=False, repr=False)

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=object)
        if c.shape != (self.dim,) * 3:
            raise ValueError(f"structure constants must have shape {(self.dim,) * 3}, got {c.shape}")
        c = np.vectorize(Fraction, otypes=[object])(c)
        object.__setattr__(self, "structure_constants", c)
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"b{i}" for i in range(self.dim)))
        table = {}
        for i, j, k in zip(*np.nonzero(c != 0)):
            table.setdefault((int(i), int(j)), []).append((int(k), c[i, j, k]))
        object.__setattr__(self, "_table", table)
        bad = self.antisymmetry_violations() + self.jacobi_violations()
        if bad:
            raise ValueError(f"structure constants are not a Lie algebra: first violation {bad[0]}")
        kil = _frac_array((self.dim, self.dim))
        ads = [self.ad_matrix(self.unit(i)) for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                kil[i, j] = sum((ads[i][r][s] * ads[j][s][r]
                                 for r in range(self.dim) for s in range(self.dim)), ZERO)
        object.__setattr__(self, "killing_matrix", kil)
        if linalg.rank(kil.tolist()) != self.dim:
            raise ValueError("Killing form is degenerate; algebra is not semisimple")

    # -- vectors -----------------------------------------------------------

    def unit(self, i: int) -> list[Fraction]:
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return v

    def zero(self) -> list[Fraction]:
        return [ZERO] * self.dim

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.dim:
                raise ValueError(f"expected a vector of length {self.dim}, got {len(v)}")

    # -- bracket and Killing form -------------------------------------------

    def bracket(self, x: Sequence, y: Sequence) -> list:
        """``{x, y}`` for coordinate vectors.

        Coordinates may be any ring elements that multiply with Fractions
        (polynomials included); zero entries are skipped.
        """
        self._check(x, y)
        out = [None] * self.dim
        nzx = [i for i in range(self.dim) if not _is_zero(x[i])]
        nzy = [j for j in range(self.dim) if not _is_zero(y[j])]
        for i in nzx:
            for j in nzy:
                entries = self._table.get((i, j))
                if not entries:
                    continue
                prod = x[i] * y[j]
                for k, ck in entries:
                    term = prod * ck
                    out[k] = term if out[k] is None else out[k] + term
        return _fill(out, x, y)

    def killing(self, x: Sequence, y: Sequence):
        """``B(x, y) = tr(ad x . ad y)`` via the cached Killing matrix."""
        self._check(x, y)
        acc = None
        kil = self.killing_matrix
        for i in range(self.dim):
            if _is_zero(x[i]):
                continue
            for j in range(self.dim):
                kij = kil[i, j]
                if kij == 0 or _is_zero(y[j]):
                    continue
                term = x[i] * y[j] * kij
                acc = term if acc is None else acc + term
        if acc is None:
            return _zero_like(x, y)
        return acc

    def ad_matrix(self, x: Sequence) -> list[list[Fraction]]:
        """Matrix of ``ad x`` acting on coordinate columns."""
        self._check(x)
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def ad_stack(self) -> list[list[Fraction]]:
        """The linear map ``x -> ad x`` as a (dim*dim) x dim matrix."""
        d = self.dim
        mats = [self.ad_matrix(self.unit(i)) for i in range(d)]
        return [[mats[i][r][s] for i in range(d)] for r in range(d) for s in range(d)]

    @cached_property
    def killing_inverse(self) -> np.ndarray:
        return np.array(linalg.inverse(self.killing_matrix.tolist()), dtype=object)

    @cached_property
    def ad_left_inverse(self) -> list[list[Fraction]]:
        return linalg.left_inverse(self.ad_stack)

    def ad_inverse(self, matrix: Sequence[Sequence]) -> list[Fraction]:
        """The unique ``x`` with ``ad x == matrix``; InconsistentSystem otherwise."""
        d = self.dim
        flat = [Fraction(matrix[r][s]) for r in range(d) for s in range(d)]
        x = [sum((row[t] * flat[t] for t in range(d * d) if flat[t]), ZERO) for row in self.ad_left_inverse]
        if self.ad_matrix(x) != [list(map(Fraction, row)) for row in matrix]:
            raise linalg.InconsistentSystem("operator is not in the image of ad")
        return x

    # -- structural checks --------------------------------------------------

    def antisymmetry_violations(self) -> list[tuple[int, int, int]]:
        c = self.structure_constants
        d = self.dim
        return [(i, j, k) for i in range(d) for j in range(i, d) for k in range(d)
                if c[i, j, k] != -c[j, i, k]]

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        d = self.dim
        bad = []
        for i, j, k in itertools.combinations(range(d), 3):
            x, y, z = self.unit(i), self.unit(j), self.unit(k)
            s = _vadd(_vadd(self.bracket(x, self.bracket(y, z)),
                            self.bracket(y, self.bracket(z, x))),
                      self.bracket(z, self.bracket(x, y)))
            if any(s):
                bad.append((i, j, k))
        return bad

    def invariance_violations(self) -> list[tuple[int, int, int]]:
        """Basis triples with ``B({x,y},z) + B(y,{x,z}) != 0``."""
        d = self.dim
        u = self.unit
        return [(i, j, k) for i in range(d) for j in range(d) for k in range(d)
                if self.killing(self.bracket(u(i), u(j)), u(k)) + self.killing(u(j), self.bracket(u(i), u(k))) != 0]

    def killing_is_symmetric(self) -> bool:
        kil = self.killing_matrix
        return bool((kil == kil.T).all())


def _is_zero(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return v == 0
    return v.is_zero()


def _zero_like(*vectors):
    for vec in vectors:
        for v in vec:
            if not isinstance(v, (int, Fraction)):
                return v.zero_like()
    return ZERO


def _fill(out, *vectors):
    z = _zero_like(*vectors)
    return [z if o is None else o for o in out]


def _vadd(x, y):
    return [a + b for a, b in zip(x, y)]


# -- parabolic gradings -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ParabolicGrading:
    """A grading ``g = g_{-k} + ... + g_k`` by basis index.

    ``perp_indices`` (grade >= 1) houses p^perp, identified with T*;
    ``parabolic_indices`` (grade >= 0) houses p.
    """

    algebra: LieAlgebraSpec
    grade_of: tuple[int, ...]
    depth: int = field(init=False)
    grading_element: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        alg = self.algebra
        if len(self.grade_of) != alg.dim:
            raise ValueError("grade_of must assign a grade to every basis vector")
        object.__setattr__(self, "grade_of", tuple(int(g) for g in self.grade_of))
        k = max(abs(g) for g in self.grade_of)
        if k < 1:
            raise ValueError("a parabolic grading needs depth >= 1")
        object.__setattr__(self, "depth", k)
        bad = self.compatibility_violations()
        if bad:
            raise ValueError(f"grading is not compatible with the bracket at {bad[0]}")
        # {E, b_i} = grade_i b_i pins E uniquely since ad is injective
        diag = [[Fraction(self.grade_of[i]) if i == j else ZERO for j in range(alg.dim)] for i in range(alg.dim)]
        try:
            e = alg.ad_inverse(diag)
        except linalg.InconsistentSystem:
            raise ValueError("no grading element exists for this grading") from None
        object.__setattr__(self, "grading_element", tuple(e))

    def indices(self, j: int) -> list[int]:
        return [i for i, g in enumerate(self.grade_of) if g == j]

    @property
    def parabolic_indices(self) -> list[int]:
        return [i for i, g in enumerate(self.grade_of) if g >= 0]

    @property
    def perp_indices(self) -> list[int]:
        return [i for i, g in enumerate(self.grade_of) if g >= 1]

    def dims(self) -> dict[int, int]:
        return {j: len(self.indices(j)) for j in range(-self.depth, self.depth + 1)}

    def compatibility_violations(self) -> list[tuple[int, int]]:
        alg = self.algebra
        bad = []
        for (i, j), entries in alg._table.items():
            target = self.grade_of[i] + self.grade_of[j]
            if any(self.grade_of[k] != target for k, _ in entries):
                bad.append((i, j))
        return sorted(bad)

    def orthogonality_violations(self) -> list[tuple[int, int]]:
        kil = self.algebra.killing_matrix
        d = self.algebra.dim
        return [(i, j) for i in range(d) for j in range(d)
                if self.grade_of[i] != -self.grade_of[j] and kil[i, j] != 0]

    def grading_element_violations(self) -> list[int]:
        alg = self.algebra
        e = list(self.grading_element)
        return [i for i in range(alg.dim)
                if alg.bracket(e, alg.unit(i)) != [x * self.grade_of[i] for x in alg.unit(i)]]

    def filtration_level(self, x: Sequence) -> float:
        """Largest ``j`` with ``x`` in ``A_(j)``; +inf for zero."""
        grades = [self.grade_of[i] for i in range(len(x)) if x[i] != 0]
        return min(grades) if grades else float("inf")


def graded_project(grading: ParabolicGrading, x: Sequence, j: int) -> list:
    """Component of ``x`` in ``g_j``."""
    if abs(j) > grading.depth:
        raise ValueError(f"grade {j} outside [-{grading.depth}, {grading.depth}]")
    if len(x) != grading.algebra.dim:
        raise ValueError("dimension mismatch")
    zero = _zero_like(x)
    return [x[i] if grading.grade_of[i] == j else zero for i in range(len(x))]


# -- builders -----------------------------------------------------------------

def _sl_basis(n: int) -> tuple[list[np.ndarray], list[str], list[int]]:
    """Elementary-matrix basis of sl(n) ordered by grade for the first-column parabolic."""
    mats, names, grades = [], [], []

    def elem(i, j):
        m = np.zeros((n, n), dtype=object)
        m[:, :] = 0
        m[i, j] = 1
        return m

    for a in range(1, n):
        mats.append(elem(a, 0)); names.append(f"E{a}0"); grades.append(-1)
    for i in range(1, n):
        for j in range(1, n):
            if i != j:
                mats.append(elem(i, j)); names.append(f"E{i}{j}"); grades.append(0)
    for k in range(n - 1):
        h = elem(k, k)
        h[k + 1, k + 1] = -1
        mats.append(h); names.append(f"H{k}"); grades.append(0)
    for a in range(1, n):
        mats.append(elem(0, a)); names.append(f"E0{a}"); grades.append(1)
    return mats, names, grades


def sl_coordinates(n: int, m) -> list[Fraction]:
    """Coordinates of a traceless n x n matrix in the ``build_sl`` basis."""
    mats, names, _ = _sl_basis(n)
    out = []
    for mat, name in zip(mats, names):
        if name.startswith("E"):
            i, j = int(name[1]), int(name[2])
            out.append(Fraction(m[i][j]))
        else:
            k = int(name[1:])
            out.append(sum((Fraction(m[r][r]) for r in range(k + 1)), ZERO))
    return out


def sl_matrix(n: int, x: Sequence) -> np.ndarray:
    mats, _, _ = _sl_basis(n)
    out = np.zeros((n, n), dtype=object)
    out[:, :] = ZERO
    for c, m in zip(x, mats):
        if c:
            out = out + m * Fraction(c)
    return out


def build_sl(n: int, grading: str = "first-column") -> tuple[LieAlgebraSpec, ParabolicGrading]:
    """sl(n, Q) in the elementary-matrix basis with a |1|-grading.

    The only selector is ``"first-column"``: g_{-1} is the first column below
    the diagonal (the projective-geometry model), so the grade dimensions
    are ``(n-1, (n-1)**2, n-1)``.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"sl(n) needs an integer n >= 2, got {n!r}")
    if grading != "first-column":
        raise ValueError(f"unknown parabolic selector {grading!r}")
    mats, names, grades = _sl_basis(n)
    d = len(mats)
    c = _frac_array((d, d, d))
    for i in range(d):
        for j in range(d):
            comm = mats[i].dot(mats[j]) - mats[j].dot(mats[i])
            c[i, j, :] = sl_coordinates(n, comm)
    alg = LieAlgebraSpec(d, c, tuple(names))
    return alg, ParabolicGrading(alg, tuple(grades))


# -- operators consumed by the homogeneity argument ---------------------------

def _bracket_basis(alg: LieAlgebraSpec, i: int, j: int) -> list[tuple[int, Fraction]]:
    return alg._table.get((i, j), [])


def _check_perp_support(grading: ParabolicGrading, t: np.ndarray, nslots: int):
    perp = set(grading.perp_indices)
    for idx in zip(*np.nonzero(t != 0)):
        if any(int(s) not in perp for s in idx[:nslots]):
            raise ValueError(f"input not supported on p^perp in its form slots (entry {tuple(map(int, idx))})")


def codifferential(grading: ParabolicGrading, phi: np.ndarray) -> np.ndarray:
    """``d*: wedge^2 p^perp (x) g -> p^perp (x) g``.

    ``phi[i, j, k]`` (antisymmetric in ``i, j``) is the coefficient of
    ``(b_i ^ b_j) (x) b_k`` for ``i < j``. On decomposables::

        d*(Z1 ^ Z2 (x) v) = -Z1 (x) {Z2, v} + Z2 (x) {Z1, v} - {Z1, Z2} (x) v

    The result ``s[i, k]`` is the coefficient of ``b_i (x) b_k``.
    """
    alg = grading.algebra
    d = alg.dim
    phi = np.asarray(phi, dtype=object)
    if phi.shape != (d, d, d):
        raise ValueError(f"expected shape {(d, d, d)}, got {phi.shape}")
    _check_perp_support(grading, phi, 2)
    out = _frac_array((d, d))
    for i, j in itertools.combinations(range(d), 2):
        for k in range(d):
            coef = phi[i, j, k]
            if coef == 0:
                continue
            for m, c in _bracket_basis(alg, j, k):
                out[i, m] -= coef * c
            for m, c in _bracket_basis(alg, i, k):
                out[j, m] += coef * c
            for m, c in _bracket_basis(alg, i, j):
                out[m, k] -= coef * c
    return out


def codifferential3(grading: ParabolicGrading, psi: np.ndarray) -> np.ndarray:
    """The same-convention operator one degree up, ``wedge^3 -> wedge^2``.

    ``psi[i, j, l, k]`` is totally antisymmetric in the first three slots and
    is the coefficient of ``(b_i ^ b_j ^ b_l) (x) b_k`` for ``i < j < l``.
    Output uses the layout accepted by :func:`codifferential`.
    """
    alg = grading.algebra
    d = alg.dim
    psi = np.asarray(psi, dtype=object)
    if psi.shape != (d,) * 4:
        raise ValueError(f"expected shape {(d,) * 4}, got {psi.shape}")
    _check_perp_support(grading, psi, 3)
    out = _frac_array((d, d, d))

    def add_wedge(u, w, k, c):
        out[u, w, k] += c
        out[w, u, k] -= c

    for i, j, l in itertools.combinations(range(d), 3):
        zs = (i, j, l)
        for k in range(d):
            coef = psi[i, j, l, k]
            if coef == 0:
                continue
            for pos in range(3):
                sign = 1 if pos % 2 == 0 else -1
                rest = [z for q, z in enumerate(zs) if q != pos]
                for m, c in _bracket_basis(alg, zs[pos], k):
                    add_wedge(rest[0], rest[1], m, sign * coef * c)
            for p, q in itertools.combinations(range(3), 2):
                sign = (-1) ** (p + q)
                other = zs[3 - p - q]
                for m, c in _bracket_basis(alg, zs[p], zs[q]):
                    add_wedge(m, other, k, sign * coef * c)
    return out


def codifferential_squared_defects(grading: ParabolicGrading) -> list[tuple[int, int, int, int]]:
    """Spanning-set sweep of ``d* . d*`` over basis elements of wedge^3 p^perp (x) g."""
    d = grading.algebra.dim
    bad = []
    for i, j, l in itertools.combinations(grading.perp_indices, 3):
        for k in range(d):
            psi = _frac_array((d,) * 4)
            for perm in itertools.permutations(range(3)):
                idx = tuple((i, j, l)[p] for p in perm)
                psi[idx + (k,)] = Fraction(_perm_sign(perm))
            if (codifferential(grading, codifferential3(grading, psi)) != 0).any():
                bad.append((i, j, l, k))
    return bad


def _perm_sign(perm) -> int:
    sign = 1
    p = list(perm)
    for a in range(len(p)):
        for b in range(a + 1, len(p)):
            if p[a] > p[b]:
                sign = -sign
    return sign


def id_minus_m(t: np.ndarray) -> np.ndarray:
    """``(Id - m) t`` where ``m`` swaps the first and last tensor slots."""
    t = np.asarray(t, dtype=object)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise ValueError(f"expected a cubic rank-3 tensor, got shape {t.shape}")
    return t - t.transpose(2, 1, 0)


def id_minus_m_rank_on_wedge(dim: int) -> tuple[int, int]:
    """(rank, dimension) of Id - m restricted to ``wedge^2 V (x) V``, ``dim V = dim``."""
    cols = []
    for i, j in itertools.combinations(range(dim), 2):
        for k in range(dim):
            t = _frac_array((dim,) * 3)
            t[i, j, k] = Fraction(1)
            t[j, i, k] = Fraction(-1)
            cols.append(id_minus_m(t).ravel().tolist())
    # rank of the column set == rank of its transpose
    return linalg.rank(cols), len(cols)


def phi_form(alg: LieAlgebraSpec, v: Sequence) -> np.ndarray:
    """The bilinear form ``beta[i, j] = B(v, {b_i, b_j})``."""
    alg._check(v)
    d = alg.dim
    beta = _frac_array((d, d))
    for i in range(d):
        for j in range(d):
            beta[i, j] = alg.killing(v, alg.bracket(alg.unit(i), alg.unit(j)))
    return beta


def phi_map(alg: LieAlgebraSpec, v: Sequence) -> np.ndarray:
    """B-dual bivector of ``(x, y) -> B(v, {x, y})``.

    Returns ``W`` (antisymmetric) representing ``sum W[i,j] b_i (x) b_j``;
    contracting both slots with ``x, y`` through ``B`` gives back the form.
    """
    kinv = alg.killing_inverse
    return kinv.dot(phi_form(alg, v)).dot(kinv)


def contract_bivector(alg: LieAlgebraSpec, w: np.ndarray, x: Sequence, y: Sequence):
    kx = alg.killing_matrix.dot(np.array(x, dtype=object))
    ky = alg.killing_matrix.dot(np.array(y, dtype=object))
    return kx.dot(w).dot(ky)


def phi_map_rank(alg: LieAlgebraSpec) -> int:
    cols = [phi_map(alg, alg.unit(i)).ravel().tolist() for i in range(alg.dim)]
    return linalg.rank(cols)
