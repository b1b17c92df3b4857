import random
from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp

from conftest import POINTS
from matrix_oracle import MatrixModel
from precourant import courant
from precourant.checks import random_scalar, random_section
from precourant.courant import (PointwiseData, angle_bracket, angle_jacobi_defect, check_axiom2,
                                check_axiom3, check_df_bracket, check_homogeneity_theorem,
                                courant_bracket, courant_bracket_at, frame_at, jacobiator_at,
                                jacobiator_direct, jacobiator_frame, jacobiator_frame_parts,
                                jacobiator_on_frame, skew_defect, skewness_defects,
                                symmetric_part_defect, tensoriality_defect, VacuousCheck)
from precourant.lie import sl_matrix

CTXS = ["flat_ctx", "curved_ctx", "wild_ctx"]


def _sections(ctx, seed, k):
    rng = random.Random(seed)
    return [random_section(rng, ctx) for _ in range(k)], random_scalar(rng, ctx.n)


def _zero(v):
    return all(c == 0 for c in v)


@pytest.mark.parametrize("name", CTXS)
def test_bracket_identities(name, request):
    ctx = request.getfixturevalue(name)
    for seed in range(3):
        (x, y, z), f = _sections(ctx, f"identities:{seed}", 3)
        p = POINTS[seed]
        assert _zero(symmetric_part_defect(x, ctx, p))
        assert _zero(skew_defect(x, y, ctx, p))
        assert check_axiom2(x, y, ctx, p) == 0
        assert check_axiom3(x, y, z, ctx, p) == 0
        assert _zero(check_df_bracket(f, y, ctx, p))


@pytest.mark.parametrize("name", CTXS)
def test_bracket_at_point_matches_polynomial(name, request):
    ctx = request.getfixturevalue(name)
    (x, y), _ = _sections(ctx, "at-point", 2)
    for p in POINTS:
        assert courant_bracket_at(x, y, ctx, p) == courant_bracket(x, y, ctx).evaluate(p)


def _to_sympy(field, n):
    xs = sp.symbols(f"x1:{n}")
    out = sp.zeros(n, n)
    for i, comp in enumerate(field):
        expr = sum((sp.Rational(c.numerator, c.denominator) * sp.Mul(*[v ** e for v, e in zip(xs, m)])
                    for m, c in comp.terms.items()), sp.Integer(0))
        basis = sl_matrix(n, field.algebra.unit(i))
        out += expr * sp.Matrix(n, n, [sp.Rational(v.numerator, v.denominator) for v in basis.flat])
    return out


def test_brackets_agree_with_matrix_oracle(curved_ctx, wild_ctx):
    x1, x2 = sp.symbols("x1:3")
    models = {
        "curved": (curved_ctx, MatrixModel(3, christoffel={(0, 1, 1): x1})),
        "wild": (wild_ctx, MatrixModel(3, christoffel={(0, 0, 1): x1 * x2, (1, 1, 0): x1 - 1, (0, 1, 1): x2 ** 2},
                                       rho={(0, 1): x1, (1, 0): sp.Rational(1, 2), (1, 1): x2})),
    }
    for label, (ctx, model) in models.items():
        (x, y), _ = _sections(ctx, f"oracle:{label}", 2)
        sx, sy = _to_sympy(x, 3), _to_sympy(y, 3)
        for a in range(2):
            for b in range(2):
                assert _to_sympy(ctx.connection.curvature[a, b], 3) == model.kappa[a, b]
        assert (_to_sympy(angle_bracket(x, y, ctx), 3) - model.angle(sx, sy)).applyfunc(sp.expand) == sp.zeros(3, 3)
        assert (_to_sympy(courant_bracket(x, y, ctx), 3) - model.bracket(sx, sy)).applyfunc(sp.expand) == sp.zeros(3, 3)


def test_angle_bracket_jacobi_on_curved(curved_ctx):
    # not assumed a priori: it is what makes the splitting formula trustworthy
    (x, y, z), _ = _sections(curved_ctx, "angle-jacobi", 3)
    assert _zero(angle_jacobi_defect(x, y, z, curved_ctx, POINTS[0]))


@pytest.mark.parametrize("name", ["curved_ctx", "wild_ctx"])
def test_jacobiator_tensorial_and_skew(name, request):
    ctx = request.getfixturevalue(name)
    (x, y, z), f = _sections(ctx, "pre-courant", 3)
    p = POINTS[1]
    pd = PointwiseData(ctx, p)
    assert _zero(tensoriality_defect(f, x, y, z, ctx, p, pd))
    a, b = skewness_defects(x, y, z, ctx, p, pd)
    assert _zero(a) and _zero(b)


def test_jacobiator_at_matches_nested_polynomial(curved_ctx):
    (x, y, z), _ = _sections(curved_ctx, "nested", 3)
    p = POINTS[2]
    assert jacobiator_at(x, y, z, curved_ctx, p) == jacobiator_direct(x, y, z, curved_ctx).evaluate(p)


def test_frame_is_parallel_at_point(curved_ctx, wild_ctx):
    for ctx in (curved_ctx, wild_ctx):
        p = POINTS[1]
        for e in frame_at(ctx, p):
            assert all(not any(d.evaluate(p)) for d in ctx.connection.nabla(e))


@pytest.mark.parametrize("name", ["curved_ctx", "wild_ctx"])
def test_frame_closed_form_matches_direct(name, request):
    ctx = request.getfixturevalue(name)
    p = POINTS[0]
    assert (jacobiator_on_frame(ctx, p) == jacobiator_frame(ctx, p)).all()


def test_closed_form_is_tensorial_in_sections(wild_ctx):
    (x, y, z), _ = _sections(wild_ctx, "tensor", 3)
    p = POINTS[2]
    jt = jacobiator_frame(wild_ctx, p)
    xv, yv, zv = (s.evaluate(p) for s in (x, y, z))
    contracted = np.tensordot(np.tensordot(np.tensordot(np.array(xv, dtype=object), jt, axes=(0, 0)),
                                           np.array(yv, dtype=object), axes=(0, 0)),
                              np.array(zv, dtype=object), axes=(0, 0))
    assert list(contracted) == jacobiator_at(x, y, z, wild_ctx, p)


def test_jacobiator_vanishes_on_curved_geometries(curved_ctx, wild_ctx):
    """The bracket as implemented satisfies Jacobi even where kappa != 0.

    Three independent routes agree (nested brackets, the frame closed form
    and the sympy matrix model); see the ledger for the consequences.
    """
    for ctx in (curved_ctx, wild_ctx):
        for p in POINTS[:2]:
            lin, quad = jacobiator_frame_parts(ctx, p)
            assert not (lin != 0).any() and not (quad != 0).any()
            assert (ctx.connection.kappa_bilinear(p) != 0).any()


def test_matrix_oracle_jacobiator_vanishes():
    x1, x2 = sp.symbols("x1:3")
    model = MatrixModel(3, christoffel={(0, 1, 1): x1})
    x = model.E(1, 0) + x2 * model.E(0, 1)
    y = model.E(2, 0) * x1 + model.E(1, 2)
    z = model.E(1, 1) - model.E(2, 2) + x1 * model.E(2, 0)
    assert model.jacobiator(x, y, z) == sp.zeros(3, 3)


def test_homogeneity_precondition(flat_ctx, curved_ctx):
    with pytest.raises(VacuousCheck):
        check_homogeneity_theorem(flat_ctx, POINTS[0])
    res = check_homogeneity_theorem(curved_ctx, (F(1), F(1)))
    assert res.hom_kappa == 2
    assert res.lower_bound_holds


# -- negative controls: the checkers are not blind ----------------------------------

def test_dropping_nabla_term_breaks_symmetric_part(curved_ctx, monkeypatch):
    (x, y), _ = _sections(curved_ctx, "mutant", 2)
    zero = lambda ctx, nx, y: courant._kappa_form(ctx, y, y) * 0  # noqa: E731
    monkeypatch.setattr(courant, "_nabla_form", zero)
    assert not _zero(symmetric_part_defect(x, curved_ctx, POINTS[0]))


def test_flipping_kappa_sign_breaks_jacobi(curved_ctx, monkeypatch):
    conn = curved_ctx.connection
    (x, y, z), _ = _sections(curved_ctx, "mutant-j", 3)
    orig = type(conn).kappa
    monkeypatch.setattr(type(conn), "kappa", lambda self, u, v: orig(self, u, v) * -1)
    assert not _zero(jacobiator_direct(x, y, z, curved_ctx).evaluate(POINTS[0]))
