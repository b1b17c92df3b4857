"""The adjoint tractor connection of a Weyl structure on a polynomial patch.

The patch coordinates are identified with ``g_{-1}``: coordinate ``a`` is the
a-th basis vector ``e_a`` of ``g_{-1}`` (in basis order). A Weyl structure
(Christoffel symbols ``Gamma^a_{bc}`` and Rho tensor ``P_{ab}``) splits the
tractor connection as

    nabla_a x = d_a x + {e_a, x} + {Gamma_a, x} + {P(e_a), x}

where ``Gamma_a`` is the ``g_0`` element acting on ``g_{-1}`` by the matrix
``(Gamma^b_{ac})`` and ``P(e_a) = iota(P_{a.})`` lies in ``g_1``. The sum
``omega_a = e_a + Gamma_a + P(e_a)`` is the local connection form.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .lie import LieAlgebraSpec, ParabolicGrading, codifferential
from .patch import CotangentField, PolyScalar, TractorField

ZERO = Fraction(0)


def _check_index(idx, length, n):
    if len(idx) != length or any(not 0 <= i < n for i in idx):
        raise ValueError(f"index {tuple(idx)} out of range for patch dimension {n}")


class CurvatureInconsistency(RuntimeError):
    """The curvature operator is not in the image of ad (an internal bug)."""

    def __init__(self, a, b, residual):
        super().__init__(f"ad-inversion failed for coordinate pair ({a}, {b}); residual {residual}")
        self.pair = (a, b)
        self.residual = residual


@dataclass(frozen=True)
class WeylStructure:
    """``christoffel[a][b][c] = Gamma^a_{bc}`` (so ``nabla_b e_c = Gamma^a_{bc} e_a``)
    and ``rho[a][b] = P_{ab}``; entries are PolyScalars. Torsion is allowed."""

    christoffel: tuple
    rho: tuple

    def __post_init__(self):
        n = len(self.rho)
        gam = tuple(tuple(tuple(c) for c in row) for row in self.christoffel)
        rho = tuple(tuple(r) for r in self.rho)
        if len(gam) != n or any(len(r) != n or any(len(c) != n for c in r) for r in gam):
            raise ValueError("christoffel must be n x n x n with n = len(rho)")
        if any(len(r) != n for r in rho):
            raise ValueError("rho must be n x n")
        if any(p.nvars != n for p in self.entries(gam, rho)):
            raise ValueError(f"all Weyl data must be polynomials in {n} variables")
        object.__setattr__(self, "christoffel", gam)
        object.__setattr__(self, "rho", rho)

    @staticmethod
    def entries(gam, rho):
        for row in gam:
            for col in row:
                yield from col
        for row in rho:
            yield from row

    @property
    def nvars(self) -> int:
        return len(self.rho)

    @classmethod
    def flat(cls, n: int) -> "WeylStructure":
        z = PolyScalar(n)
        return cls([[[z] * n for _ in range(n)] for _ in range(n)], [[z] * n for _ in range(n)])

    @classmethod
    def from_entries(cls, n: int, christoffel: dict | None = None, rho: dict | None = None) -> "WeylStructure":
        """Build from sparse ``{(a, b, c): poly}`` / ``{(a, b): poly}`` maps (0-based)."""
        z = PolyScalar(n)
        gam = [[[z] * n for _ in range(n)] for _ in range(n)]
        rh = [[z] * n for _ in range(n)]
        for idx, p in (christoffel or {}).items():
            _check_index(idx, 3, n)
            gam[idx[0]][idx[1]][idx[2]] = p
        for idx, p in (rho or {}).items():
            _check_index(idx, 2, n)
            rh[idx[0]][idx[1]] = p
        return cls(gam, rh)

    def is_torsion_free(self) -> bool:
        n = self.nvars
        return all(self.christoffel[a][b][c] == self.christoffel[a][c][b]
                   for a in range(n) for b in range(n) for c in range(n))


@dataclass(frozen=True)
class CurvatureField:
    """``kappa[a][b]``: the g-valued curvature two-form in coordinate slots."""

    components: tuple

    def __getitem__(self, ab):
        a, b = ab
        return self.components[a][b]

    @property
    def nvars(self) -> int:
        return len(self.components)

    def at(self, point) -> list[list[list[Fraction]]]:
        n = self.nvars
        return [[self.components[a][b].evaluate(point) for b in range(n)] for a in range(n)]


class TractorConnection:
    """Algebra + grading + Weyl structure: the local model of a parabolic geometry."""

    def __init__(self, algebra: LieAlgebraSpec, grading: ParabolicGrading, weyl: WeylStructure):
        self.algebra = algebra
        self.grading = grading
        self.weyl = weyl
        self.tangent_indices = grading.indices(-1)
        self.n = len(self.tangent_indices)
        if weyl.nvars != self.n:
            raise ValueError(f"patch dimension {weyl.nvars} does not match dim g_-1 = {self.n}")
        self.cotangent_basis = self._cotangent_basis()
        self.omega = self._connection_form()

    # -- algebraic identifications ------------------------------------------

    def _cotangent_basis(self) -> list[list[Fraction]]:
        """``eps^a`` in ``g_1`` with ``B(eps^a, e_b) = delta_ab``."""
        alg = self.algebra
        g1 = self.grading.indices(1)
        if len(g1) != self.n:
            raise ValueError("g_1 and g_-1 must have equal dimension")
        kil = alg.killing_matrix
        # rows: conditions b, cols: g_1 coordinates
        pairing = [[kil[i, self.tangent_indices[b]] for i in g1] for b in range(self.n)]
        inv = linalg.inverse(pairing)
        out = []
        for a in range(self.n):
            v = alg.zero()
            for col, i in enumerate(g1):
                v[i] = inv[col][a]
            out.append(v)
        return out

    @cached_property
    def g0_generators(self) -> dict[tuple[int, int], list[Fraction]]:
        """``G[(b, c)]`` in ``g_0`` acting on ``g_-1`` as ``e_c -> e_b``, others to zero."""
        alg = self.algebra
        g0 = self.grading.indices(0)
        tan = self.tangent_indices
        rows = []
        for c in range(self.n):
            for b in range(self.n):
                rows.append([alg.bracket(alg.unit(i), alg.unit(tan[c]))[tan[b]] for i in g0])
        out = {}
        for b in range(self.n):
            for c in range(self.n):
                rhs = [Fraction(int(cc == c and bb == b)) for cc in range(self.n) for bb in range(self.n)]
                try:
                    coeffs = linalg.solve(rows, rhs)
                except linalg.InconsistentSystem:
                    out[(b, c)] = None
                    continue
                v = alg.zero()
                for i, x in zip(g0, coeffs):
                    v[i] = x
                out[(b, c)] = v
        return out

    def _connection_form(self) -> list[TractorField]:
        alg, n = self.algebra, self.n
        zero = PolyScalar(n)
        gam, rho = self.weyl.christoffel, self.weyl.rho
        omega = []
        for a in range(n):
            comps = [zero] * alg.dim
            comps[self.tangent_indices[a]] = PolyScalar.constant(1, n)
            for b in range(n):
                for c in range(n):
                    g = gam[b][a][c]
                    if g.is_zero():
                        continue
                    gen = self.g0_generators[(b, c)]
                    if gen is None:
                        raise ValueError(f"Gamma^{b}_{a}{c} is not realisable in g_0")
                    comps = [p + g * x if x else p for p, x in zip(comps, gen)]
                p_ab = rho[a][b]
                if not p_ab.is_zero():
                    comps = [p + p_ab * x if x else p for p, x in zip(comps, self.cotangent_basis[b])]
            omega.append(TractorField(alg, comps))
        return omega

    # -- sections -----------------------------------------------------------

    def constant(self, vector: Sequence) -> TractorField:
        return TractorField.constant(self.algebra, vector, self.n)

    def basis_section(self, i: int) -> TractorField:
        return self.constant(self.algebra.unit(i))

    def bracket(self, x, y) -> TractorField:
        """Fibrewise algebraic bracket ``{x, y}`` of two fields."""
        return TractorField(self.algebra, self.algebra.bracket(x, y))

    def killing(self, x, y) -> PolyScalar:
        return self.algebra.killing(x, y)

    def include_cotangent(self, v: CotangentField) -> TractorField:
        """``iota: T* -> A`` normalised by ``B(iota(v), x) = v(pi(x))``."""
        if len(v) != self.n:
            raise ValueError(f"one-form has {len(v)} components, dim g_-1 is {self.n}")
        zero = PolyScalar(self.n)
        comps = [zero] * self.algebra.dim
        for a in range(self.n):
            va = v[a]
            if va.is_zero():
                continue
            comps = [p + va * x if x else p for p, x in zip(comps, self.cotangent_basis[a])]
        return TractorField(self.algebra, comps)

    def anchor(self, x) -> list[PolyScalar]:
        """``pi(x)``: the ``g_-1`` component, as a vector field in coordinates."""
        return [x[i] for i in self.tangent_indices]

    def nabla(self, x: TractorField) -> list[TractorField]:
        """``[nabla_a x for a in range(n)]`` (the T* (x) A-valued derivative)."""
        return [x.partial(a) + self.bracket(self.omega[a], x) for a in range(self.n)]

    def nabla_along(self, v: Sequence[PolyScalar], x: TractorField) -> TractorField:
        """``nabla_v x = sum_a v^a nabla_a x`` for a vector field ``v``."""
        out = TractorField.zero(self.algebra, self.n)
        for a, d in enumerate(self.nabla(x)):
            if not v[a].is_zero():
                out = out + d * v[a]
        return out

    # -- curvature ------------------------------------------------------------

    def curvature_operator(self, a: int, b: int, x: TractorField) -> TractorField:
        """``(nabla_a nabla_b - nabla_b nabla_a) x``; coordinate fields commute."""
        da = self.nabla(x)
        return self.nabla(da[b])[a] - self.nabla(da[a])[b]

    @cached_property
    def curvature(self) -> CurvatureField:
        """kappa by ad-inversion of the curvature operator on basis sections."""
        alg, n, d = self.algebra, self.n, self.algebra.dim
        zero = TractorField.zero(alg, n)
        comps = [[zero] * n for _ in range(n)]
        for a, b in itertools.combinations(range(n), 2):
            cols = [self.curvature_operator(a, b, self.basis_section(j)) for j in range(d)]
            monos = sorted({m for col in cols for p in col for m in p.terms})
            kappa_terms = [dict() for _ in range(d)]
            for m in monos:
                mat = [[cols[j][i].terms.get(m, ZERO) for j in range(d)] for i in range(d)]
                try:
                    k = alg.ad_inverse(mat)
                except linalg.InconsistentSystem:
                    flat = [Fraction(v) for row in mat for v in row]
                    x = [sum((r * f for r, f in zip(row, flat)), ZERO) for row in alg.ad_left_inverse]
                    resid = [[mat[i][j] - alg.ad_matrix(x)[i][j] for j in range(d)] for i in range(d)]
                    raise CurvatureInconsistency(a, b, resid) from None
                for i, v in enumerate(k):
                    if v:
                        kappa_terms[i][m] = v
            field_ab = TractorField(alg, [PolyScalar(n, t) for t in kappa_terms])
            comps[a][b] = field_ab
            comps[b][a] = -field_ab
        return CurvatureField(tuple(tuple(r) for r in comps))

    def kappa(self, x, y) -> TractorField:
        """``kappa(pi x, pi y)`` for fields ``x, y``."""
        px, py = self.anchor(x), self.anchor(y)
        out = TractorField.zero(self.algebra, self.n)
        kap = self.curvature
        for a in range(self.n):
            if px[a].is_zero():
                continue
            for b in range(self.n):
                if a == b or py[b].is_zero():
                    continue
                out = out + kap[a, b] * (px[a] * py[b])
        return out

    def kappa_bilinear(self, point) -> np.ndarray:
        """Pointwise kappa as a bilinear map on g: ``K[i, j, :] = kappa(b_i, b_j)(p)``."""
        d = self.algebra.dim
        out = np.empty((d, d, d), dtype=object)
        out.fill(ZERO)
        vals = self.curvature.at(point)
        tan = self.tangent_indices
        for a in range(self.n):
            for b in range(self.n):
                out[tan[a], tan[b], :] = vals[a][b]
        return out

    def graded_curvature(self, point) -> dict[tuple[int, int, int], list]:
        """Nonzero graded pieces ``kappa_{a,b,c}`` at a point.

        Keys are (form grade, form grade, value grade); for |1|-graded
        geometries both form grades are 1.
        """
        vals = self.curvature.at(point)
        out = {}
        for a, b in itertools.combinations(range(self.n), 2):
            for c in range(-self.grading.depth, self.grading.depth + 1):
                piece = [v if self.grading.grade_of[i] == c else ZERO for i, v in enumerate(vals[a][b])]
                if any(piece):
                    out.setdefault((1, 1, c), []).append(((a, b), piece))
        return out

    def curvature_wedge(self, point) -> np.ndarray:
        """kappa(p) in ``wedge^2 p^perp (x) g`` via ``dx^a -> eps^a`` (codifferential layout)."""
        d = self.algebra.dim
        phi = np.empty((d, d, d), dtype=object)
        phi.fill(ZERO)
        vals = self.curvature.at(point)
        eps = self.cotangent_basis
        for a, b in itertools.combinations(range(self.n), 2):
            for i in range(d):
                for j in range(d):
                    w = eps[a][i] * eps[b][j] - eps[a][j] * eps[b][i]
                    if w:
                        for k in range(d):
                            phi[i, j, k] += w * vals[a][b][k]
        return phi

    def closed_form_curvature(self, a: int, b: int) -> TractorField:
        """``d_a omega_b - d_b omega_a + {omega_a, omega_b}`` (test oracle)."""
        om = self.omega
        return om[b].partial(a) - om[a].partial(b) + self.bracket(om[a], om[b])

    def bianchi_defects(self, point) -> list[tuple[int, int, int]]:
        """Coordinate triples where the cyclic sum of ``(nabla kappa)`` fails to vanish.

        Form slots are differentiated with the Weyl connection, the value slot
        with the tractor connection. Zero for torsion-free Weyl structures.
        """
        n = self.n
        kap = self.curvature
        gam = self.weyl.christoffel

        def cov(a, b, c):
            val = kap[b, c].partial(a) + self.bracket(self.omega[a], kap[b, c])
            for e in range(n):
                val = val - kap[e, c] * gam[e][a][b] - kap[b, e] * gam[e][a][c]
            return val

        bad = []
        for a, b, c in itertools.combinations(range(n), 3):
            s = cov(a, b, c) + cov(b, c, a) + cov(c, a, b)
            if any(s.evaluate(point)):
                bad.append((a, b, c))
        return bad


def homogeneity(t: np.ndarray, grading: ParabolicGrading) -> float:
    """Minimal total grade over nonzero entries of a pointwise multilinear map.

    ``t`` has shape ``(dim,) * (k + 1)``: ``k`` input slots and one output
    slot. An input ``b_i`` is paired with its B-dual of grade ``-grade(b_i)``,
    so a ``g_-1`` input counts as a T*-slot of grade +1. Returns ``math.inf``
    for the zero tensor.
    """
    t = np.asarray(t, dtype=object)
    d = grading.algebra.dim
    if t.ndim not in (3, 4) or t.shape != (d,) * t.ndim:
        raise ValueError(f"unsupported tensor shape {t.shape}; expected kappa- or J-shaped")
    g = grading.grade_of
    best = math.inf
    for idx in zip(*np.nonzero(t != 0)):
        h = g[idx[-1]] - sum(g[i] for i in idx[:-1])
        best = min(best, h)
    return best


def curvature_homogeneity(conn: TractorConnection, point) -> float:
    return homogeneity(conn.kappa_bilinear(point), conn.grading)


def is_regular(conn: TractorConnection, points) -> bool:
    return all(curvature_homogeneity(conn, p) >= 1 for p in points)


def normality_defect(conn: TractorConnection, point) -> np.ndarray:
    """``d* kappa`` at a point."""
    return codifferential(conn.grading, conn.curvature_wedge(point))


def is_normal(conn: TractorConnection, points) -> bool:
    return all(not (normality_defect(conn, p) != 0).any() for p in points)


def change_splitting(grading: ParabolicGrading, upsilon: Sequence, x: Sequence) -> list[Fraction]:
    """``exp(ad upsilon) x`` for ``upsilon`` in ``p^perp`` (a finite sum)."""
    alg = grading.algebra
    if any(upsilon[i] for i in range(alg.dim) if grading.grade_of[i] < 1):
        raise ValueError("upsilon must lie in p^perp")
    out = [Fraction(v) for v in x]
    term = list(out)
    k = 1
    while any(term):
        term = [v / k for v in alg.bracket(upsilon, term)]
        out = [a + b for a, b in zip(out, term)]
        k += 1
    return out
