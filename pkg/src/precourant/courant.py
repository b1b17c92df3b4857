"""The pre-Courant algebroid structure on the adjoint tractor bundle.

Two brackets live here. The skew one,

    <x, y> = nabla_x y - nabla_y x - {x, y} - kappa(x, y),

and the Dorfman-type bracket

    [x, y] = <x, y> + B(y, kappa(x, -)) - B(x, kappa(y, -)) + B(nabla x, y)

whose last three terms are one-forms pushed into the tractor bundle by the
B-normalised inclusion ``iota``. ``nabla_x`` always means ``nabla_{pi(x)}``,
and ``B(nabla x, y)`` is the one-form ``Z -> B(nabla_Z x, y)``.

Every checker returns an exact defect evaluated at a point; the contract is
that the defect is zero.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .patch import CotangentField, PolyScalar, TractorField, exterior_d
from .tractor import TractorConnection, homogeneity

ZERO = Fraction(0)


class VacuousCheck(Exception):
    """A theorem's hypotheses fail at the requested point."""


@dataclass
class BracketContext:
    """A parabolic geometry (M, A, nabla) together with its sample points."""

    connection: TractorConnection
    points: list = field(default_factory=list)

    @property
    def algebra(self):
        return self.connection.algebra

    @property
    def grading(self):
        return self.connection.grading

    @property
    def weyl(self):
        return self.connection.weyl

    @property
    def curvature(self):
        return self.connection.curvature

    @property
    def n(self) -> int:
        return self.connection.n


# -- small helpers --------------------------------------------------------------

def _derive(v: Sequence[PolyScalar], f: PolyScalar) -> PolyScalar:
    """``v . f`` for a vector field ``v``."""
    out = f.zero_like()
    for a, va in enumerate(v):
        if not va.is_zero():
            out = out + va * f.partial(a)
    return out


def _kappa_form(ctx: BracketContext, x, y) -> CotangentField:
    """The one-form ``Z -> B(y, kappa(pi x, Z))``."""
    conn = ctx.connection
    kap = conn.curvature
    px = conn.anchor(x)
    comps = []
    for b in range(conn.n):
        acc = PolyScalar(conn.n)
        for a in range(conn.n):
            if a != b and not px[a].is_zero():
                acc = acc + px[a] * conn.killing(y, kap[a, b])
        comps.append(acc)
    return CotangentField(comps)


def _nabla_form(ctx: BracketContext, nx: list[TractorField], y) -> CotangentField:
    """The one-form ``Z -> B(nabla_Z x, y)`` given ``nx = nabla x``."""
    return CotangentField([ctx.connection.killing(d, y) for d in nx])


def _along(nx: list[TractorField], v: Sequence[PolyScalar], conn: TractorConnection) -> TractorField:
    out = TractorField.zero(conn.algebra, conn.n)
    for a, d in enumerate(nx):
        if not v[a].is_zero():
            out = out + d * v[a]
    return out


# -- brackets -------------------------------------------------------------------

def angle_bracket(x: TractorField, y: TractorField, ctx: BracketContext) -> TractorField:
    conn = ctx.connection
    nx, ny = conn.nabla(x), conn.nabla(y)
    return (_along(ny, conn.anchor(x), conn) - _along(nx, conn.anchor(y), conn)
            - conn.bracket(x, y) - conn.kappa(x, y))


def courant_bracket(x: TractorField, y: TractorField, ctx: BracketContext) -> TractorField:
    conn = ctx.connection
    nx, ny = conn.nabla(x), conn.nabla(y)
    angle = (_along(ny, conn.anchor(x), conn) - _along(nx, conn.anchor(y), conn)
             - conn.bracket(x, y) - conn.kappa(x, y))
    form = _kappa_form(ctx, x, y) - _kappa_form(ctx, y, x) + _nabla_form(ctx, nx, y)
    return angle + conn.include_cotangent(form)


def d_pairing(x: TractorField, y: TractorField, ctx: BracketContext) -> TractorField:
    """``d B(x, y)`` included into the tractor bundle."""
    return ctx.connection.include_cotangent(exterior_d(ctx.connection.killing(x, y)))


# -- identity checkers --------------------------------------------------------------

def symmetric_part_defect(x, ctx, point) -> list[Fraction]:
    """``[x, x] - 1/2 d B(x, x)`` at ``point``."""
    return (courant_bracket(x, x, ctx) - d_pairing(x, x, ctx) * Fraction(1, 2)).evaluate(point)


def skew_defect(x, y, ctx, point) -> list[Fraction]:
    """``[x, y] + [y, x] - d B(x, y)`` at ``point``."""
    s = courant_bracket(x, y, ctx) + courant_bracket(y, x, ctx) - d_pairing(x, y, ctx)
    return s.evaluate(point)


def check_axiom2(x, y, ctx, point) -> Fraction:
    """``pi(x) . B(y, y) - 2 B(x, [y, y])`` at ``point``."""
    conn = ctx.connection
    lhs = _derive(conn.anchor(x), conn.killing(y, y))
    rhs = conn.killing(x, courant_bracket(y, y, ctx)) * 2
    return (lhs - rhs).evaluate(point)


def check_axiom3(x, y, z, ctx, point) -> Fraction:
    """``pi(x) . B(y, z) - B([x, y], z) - B(y, [x, z])`` at ``point``."""
    conn = ctx.connection
    lhs = _derive(conn.anchor(x), conn.killing(y, z))
    rhs = conn.killing(courant_bracket(x, y, ctx), z) + conn.killing(y, courant_bracket(x, z, ctx))
    return (lhs - rhs).evaluate(point)


def check_df_bracket(f: PolyScalar, y, ctx, point) -> list[Fraction]:
    """``[df, y]`` at ``point``, with ``df`` included as a tractor field."""
    df = ctx.connection.include_cotangent(exterior_d(f))
    return courant_bracket(df, y, ctx).evaluate(point)


def angle_jacobi_defect(x, y, z, ctx, point) -> list[Fraction]:
    """Cyclic sum ``<x,<y,z>> + <y,<z,x>> + <z,<x,y>>`` at ``point``."""
    s = (angle_bracket(x, angle_bracket(y, z, ctx), ctx)
         + angle_bracket(y, angle_bracket(z, x, ctx), ctx)
         + angle_bracket(z, angle_bracket(x, y, ctx), ctx))
    return s.evaluate(point)


def jacobiator_direct(x, y, z, ctx) -> TractorField:
    """``[x,[y,z]] - [[x,y],z] - [y,[x,z]]`` by nested brackets."""
    br = courant_bracket
    return br(x, br(y, z, ctx), ctx) - br(br(x, y, ctx), z, ctx) - br(y, br(x, z, ctx), ctx)


def courant_bracket_at(x: TractorField, y: TractorField, ctx: BracketContext, point,
                       data: "PointwiseData | None" = None) -> list[Fraction]:
    """``[x, y](p)`` from the 1-jets of ``x, y`` at ``p``; equals
    ``courant_bracket(x, y, ctx).evaluate(p)`` without building polynomials."""
    pd = data or PointwiseData(ctx, point)
    return pd.bracket(x.evaluate(point), [x.partial(a).evaluate(point) for a in range(pd.n)],
                      y.evaluate(point), [y.partial(a).evaluate(point) for a in range(pd.n)])


def jacobiator_at(x, y, z, ctx, point, data=None) -> list[Fraction]:
    """``J(x, y, z)(p)``: inner brackets as polynomials, outer ones at ``p``."""
    pd = data or PointwiseData(ctx, point)
    br = courant_bracket
    return pd.add(courant_bracket_at(x, br(y, z, ctx), ctx, point, pd),
                  pd.scale(-1, courant_bracket_at(br(x, y, ctx), z, ctx, point, pd)),
                  pd.scale(-1, courant_bracket_at(y, br(x, z, ctx), ctx, point, pd)))


def tensoriality_defect(f, x, y, z, ctx, point, data=None) -> list[Fraction]:
    """``J(f x, y, z) - f J(x, y, z)`` at ``point``."""
    pd = data or PointwiseData(ctx, point)
    lhs = jacobiator_at(x * f, y, z, ctx, point, pd)
    rhs = jacobiator_at(x, y, z, ctx, point, pd)
    fp = f.evaluate(point)
    return [a - fp * b for a, b in zip(lhs, rhs)]


def skewness_defects(x, y, z, ctx, point, data=None) -> tuple[list[Fraction], list[Fraction]]:
    """``J(x,y,z) + J(x,z,y)`` and ``J(x,y,z) + J(y,x,z)`` at ``point``."""
    pd = data or PointwiseData(ctx, point)
    j = jacobiator_at(x, y, z, ctx, point, pd)
    a = pd.add(j, jacobiator_at(x, z, y, ctx, point, pd))
    b = pd.add(j, jacobiator_at(y, x, z, ctx, point, pd))
    return a, b


# -- frames and the pointwise Jacobiator -------------------------------------------

def frame_at(ctx: BracketContext, point) -> list[TractorField]:
    """Frame ``e_j = b_j - sum_a (x - p)^a (nabla_a b_j)(p)`` with ``(nabla e_j)(p) = 0``."""
    conn = ctx.connection
    n = conn.n
    shifts = [PolyScalar.variable(a, n) - Fraction(point[a]) for a in range(n)]
    frame = []
    for j in range(conn.algebra.dim):
        b = conn.basis_section(j)
        e = b
        for a, d in enumerate(conn.nabla(b)):
            e = e - conn.constant(d.evaluate(point)) * shifts[a]
        frame.append(e)
    return frame


def jacobiator_on_frame(ctx: BracketContext, point) -> np.ndarray:
    """``J(e_i, e_j, e_l)(p)`` by nested brackets of the frame from :func:`frame_at`.

    Entries with ``i < j < l`` are computed; the rest follow by total
    antisymmetry (checked separately on random sections).
    """
    d = ctx.algebra.dim
    frame = frame_at(ctx, point)
    inner = {}

    def br(i, j):
        if (i, j) not in inner:
            inner[(i, j)] = courant_bracket(frame[i], frame[j], ctx)
        return inner[(i, j)]

    pd = PointwiseData(ctx, point)
    out = _zeros((d,) * 4)
    for i, j, l in itertools.combinations(range(d), 3):
        val = pd.add(courant_bracket_at(frame[i], br(j, l), ctx, point, pd),
                     pd.scale(-1, courant_bracket_at(br(i, j), frame[l], ctx, point, pd)),
                     pd.scale(-1, courant_bracket_at(frame[j], br(i, l), ctx, point, pd)))
        _fill_skew(out, (i, j, l), val)
    return out


def _zeros(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(ZERO)
    return a


def _fill_skew(out, idx, val):
    for perm in itertools.permutations(range(3)):
        sign = 1
        for a in range(3):
            for b in range(a + 1, 3):
                if perm[a] > perm[b]:
                    sign = -sign
        key = tuple(idx[p] for p in perm)
        out[key] = np.array([v * sign for v in val], dtype=object)


class PointwiseData:
    """Values at a point that the closed-form Jacobiator needs.

    Holds ``kappa_ab(p)``, ``(d_c kappa_ab)(p)`` and ``omega_c(p)``; every
    operation below is algebraic in these.
    """

    def __init__(self, ctx: BracketContext, point):
        conn = ctx.connection
        self.alg = conn.algebra
        self.n = conn.n
        self.tan = conn.tangent_indices
        self.eps = conn.cotangent_basis
        kap = conn.curvature
        n = self.n
        self.kappa = [[kap[a, b].evaluate(point) for b in range(n)] for a in range(n)]
        self.dkappa = [[[kap[a, b].partial(c).evaluate(point) for b in range(n)] for a in range(n)]
                       for c in range(n)]
        self.omega = [w.evaluate(point) for w in conn.omega]

    def anchor(self, u):
        return [u[i] for i in self.tan]

    def bracket(self, xv, dx, yv, dy) -> list[Fraction]:
        """``[x, y](p)`` from values ``xv`` and coordinate derivatives ``dx[a]``."""
        br, B = self.alg.bracket, self.alg.killing
        nx = [self.add(dx[a], br(self.omega[a], xv)) for a in range(self.n)]
        ny = [self.add(dy[a], br(self.omega[a], yv)) for a in range(self.n)]
        px, py = self.anchor(xv), self.anchor(yv)
        terms = [self.scale(-1, br(xv, yv)), self.scale(-1, self.K(self.kappa, xv, yv))]
        for a in range(self.n):
            if px[a]:
                terms.append(self.scale(px[a], ny[a]))
            if py[a]:
                terms.append(self.scale(-py[a], nx[a]))
        form = [B(yv, self.K_slot(self.kappa, xv, c)) - B(xv, self.K_slot(self.kappa, yv, c)) + B(nx[c], yv)
                for c in range(self.n)]
        terms.append(self.iota(form))
        return self.add(*terms)

    def iota(self, coeffs):
        out = self.alg.zero()
        for c, alpha in enumerate(coeffs):
            if alpha:
                out = [o + alpha * e for o, e in zip(out, self.eps[c])]
        return out

    def add(self, *vs):
        return [sum(t, ZERO) for t in zip(*vs)]

    def scale(self, s, v):
        return [s * x for x in v]

    # kappa-valued pieces take the curvature values explicitly so that their
    # covariant derivatives can reuse them with d kappa substituted.

    def K(self, kv, u, v):
        pu, pv = self.anchor(u), self.anchor(v)
        out = self.alg.zero()
        for a in range(self.n):
            if not pu[a]:
                continue
            for b in range(self.n):
                if pv[b]:
                    out = self.add(out, self.scale(pu[a] * pv[b], kv[a][b]))
        return out

    def K_slot(self, kv, u, c):
        """``kappa(pi u, e_c)``."""
        pu = self.anchor(u)
        out = self.alg.zero()
        for a in range(self.n):
            if pu[a]:
                out = self.add(out, self.scale(pu[a], kv[a][c]))
        return out

    def Lam(self, kv, u, v):
        """``iota(B(v, kappa(u, -)) - B(u, kappa(v, -)))``."""
        B = self.alg.killing
        return self.iota([B(v, self.K_slot(kv, u, c)) - B(u, self.K_slot(kv, v, c)) for c in range(self.n)])

    def T1(self, kv, u, v):
        """Curvature part of the algebraic bracket: ``-kappa(u, v) + Lam(u, v)``."""
        return self.add(self.scale(-1, self.K(kv, u, v)), self.Lam(kv, u, v))

    def dT1(self, c, u, v):
        """Tractor covariant derivative ``(nabla_c T1)(u, v)``."""
        br = self.alg.bracket
        w = self.omega[c]
        return self.add(self.T1(self.dkappa[c], u, v), br(w, self.T1(self.kappa, u, v)),
                        self.scale(-1, self.T1(self.kappa, br(w, u), v)),
                        self.scale(-1, self.T1(self.kappa, u, br(w, v))))

    def dT1_along(self, x, u, v):
        px = self.anchor(x)
        out = self.alg.zero()
        for c in range(self.n):
            if px[c]:
                out = self.add(out, self.scale(px[c], self.dT1(c, u, v)))
        return out


def jacobiator_frame_parts(ctx: BracketContext, point) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form ``J(b_i, b_j, b_l)(p)`` split into (linear, quadratic) in kappa.

    With ``T(u, v) = -{u, v} - kappa(u, v) + Lam(u, v)`` the pointwise part of
    the bracket, a frame parallel at ``p`` gives

        J(x,y,z) = {kappa(x,y), z} + {kappa(y,z), x} + {kappa(z,x), y}
                 + iota_c( B({kappa(x,e_c), y}, z) - B({kappa(y,e_c), x}, z)
                           + B({kappa(z,e_c), x}, y) )
                 + (nabla_x T)(y,z) - (nabla_y T)(x,z) + (nabla_z T)(x,y)
                 - iota_c( B((nabla_c T)(x,y), z) )
                 + T(x, T(y,z)) - T(T(x,y), z) - T(y, T(x,z))

    the second derivatives of the frame having cancelled into curvature.
    """
    pd = PointwiseData(ctx, point)
    alg = pd.alg
    d = alg.dim
    br, B, kv = alg.bracket, alg.killing, pd.kappa
    lin = _zeros((d,) * 4)
    quad = _zeros((d,) * 4)

    def T0(u, v):
        return pd.scale(-1, br(u, v))

    def T1(u, v):
        return pd.T1(kv, u, v)

    for i, j, l in itertools.combinations(range(d), 3):
        x, y, z = alg.unit(i), alg.unit(j), alg.unit(l)
        terms = [br(pd.K(kv, x, y), z), br(pd.K(kv, y, z), x), br(pd.K(kv, z, x), y),
                 pd.iota([B(br(pd.K_slot(kv, x, c), y), z) - B(br(pd.K_slot(kv, y, c), x), z)
                          + B(br(pd.K_slot(kv, z, c), x), y) for c in range(pd.n)]),
                 pd.dT1_along(x, y, z), pd.scale(-1, pd.dT1_along(y, x, z)), pd.dT1_along(z, x, y),
                 pd.scale(-1, pd.iota([B(pd.dT1(c, x, y), z) for c in range(pd.n)]))]
        # T(x,T(y,z)) - T(T(x,y),z) - T(y,T(x,z)); the T0.T0 part is the Jacobi identity
        for outer, inner, bucket in ((T0, T1, terms), (T1, T0, terms)):
            bucket += [outer(x, inner(y, z)), pd.scale(-1, outer(inner(x, y), z)),
                       pd.scale(-1, outer(y, inner(x, z)))]
        qterms = [T1(x, T1(y, z)), pd.scale(-1, T1(T1(x, y), z)), pd.scale(-1, T1(y, T1(x, z)))]
        _fill_skew(lin, (i, j, l), pd.add(*terms))
        _fill_skew(quad, (i, j, l), pd.add(*qterms))
    return lin, quad


def jacobiator_frame(ctx: BracketContext, point) -> np.ndarray:
    """Closed-form Jacobiator tensor ``J[i, j, l, :] = J(b_i, b_j, b_l)(p)``."""
    lin, quad = jacobiator_frame_parts(ctx, point)
    return lin + quad


@dataclass
class HomogeneityResult:
    hom_kappa: float
    hom_J: float
    equal: bool
    lower_bound_holds: bool
    jacobiator_nonzero: bool
    hom_quadratic: float


def check_homogeneity_theorem(ctx: BracketContext, point) -> HomogeneityResult:
    """Compare ``hom(J)`` with ``hom(kappa)`` at a point where kappa is nonzero."""
    conn = ctx.connection
    kap = conn.kappa_bilinear(point)
    h_k = homogeneity(kap, conn.grading)
    if h_k == math.inf:
        raise VacuousCheck(f"kappa vanishes at {tuple(point)}; the homogeneity theorem is vacuous there")
    lin, quad = jacobiator_frame_parts(ctx, point)
    jt = lin + quad
    h_j = homogeneity(jt, conn.grading)
    return HomogeneityResult(h_k, h_j, h_j == h_k, h_j >= h_k, bool((jt != 0).any()),
                             homogeneity(quad, conn.grading))
