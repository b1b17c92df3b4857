from fractions import Fraction as F
import math

import numpy as np
import pytest

from conftest import POINTS
from precourant import PolyScalar, TractorConnection, WeylStructure
from precourant.lie import codifferential
from precourant.tractor import (change_splitting, curvature_homogeneity, homogeneity, is_normal,
                                is_regular, normality_defect)


def _commutator_matches(conn):
    """ad(kappa_ab) against nabla_a nabla_b - nabla_b nabla_a on every basis section."""
    n = conn.n
    for a in range(n):
        for b in range(a + 1, n):
            k = conn.curvature[a, b]
            for i in range(conn.algebra.dim):
                s = conn.basis_section(i)
                lhs = conn.nabla(conn.nabla(s)[b])[a] - conn.nabla(conn.nabla(s)[a])[b]
                if lhs != conn.bracket(k, s):
                    return False
    return True


def test_flat_curvature_vanishes(flat_ctx):
    conn = flat_ctx.connection
    assert conn.curvature[0, 1].is_zero()
    assert _commutator_matches(conn)


def test_curved_kappa_value(curved_ctx):
    conn = curved_ctx.connection
    alg = conn.algebra
    k = conn.curvature[0, 1]
    e12 = alg.basis_names.index("E12")
    assert k.evaluate(POINTS[0]) == alg.unit(e12)
    assert conn.curvature[1, 0] == -k
    assert _commutator_matches(conn)


def test_curvature_matches_closed_form(curved_ctx, wild_ctx):
    for ctx in (curved_ctx, wild_ctx):
        conn = ctx.connection
        assert conn.curvature[0, 1] == conn.closed_form_curvature(0, 1)
        assert _commutator_matches(conn)


def test_curved_graded_pieces(curved_ctx):
    pieces = curved_ctx.connection.graded_curvature(POINTS[1])
    assert set(pieces) == {(1, 1, 0)}  # symmetric Gamma, P = 0: no torsion, no c = 1 part


def test_torsion_shows_up_in_grade_minus_one(wild_ctx):
    pieces = wild_ctx.connection.graded_curvature(POINTS[0])
    assert (1, 1, -1) in pieces


def test_homogeneity_and_regularity(flat_ctx, curved_ctx, wild_ctx):
    assert curvature_homogeneity(flat_ctx.connection, POINTS[0]) == math.inf
    assert curvature_homogeneity(curved_ctx.connection, POINTS[0]) == 2
    assert is_regular(curved_ctx.connection, POINTS)
    assert curvature_homogeneity(wild_ctx.connection, POINTS[0]) == 1


def test_normality(flat_ctx, curved_ctx):
    assert is_normal(flat_ctx.connection, POINTS)
    assert not is_normal(curved_ctx.connection, POINTS)
    dk = normality_defect(curved_ctx.connection, POINTS[0])
    assert int((dk != 0).sum()) == 1


def test_kappa_components_are_e_eigenvectors(curved_ctx):
    # E acts on the output of the grade-c piece by multiplication by c
    conn = curved_ctx.connection
    alg, e = conn.algebra, list(conn.grading.grading_element)
    for (_, _, c), entries in conn.graded_curvature(POINTS[2]).items():
        for _, v in entries:
            assert alg.bracket(e, v) == [c * x for x in v]


def test_homogeneity_helper_rejects_bad_shapes(sl3):
    _, grading = sl3
    with pytest.raises(ValueError):
        homogeneity(np.zeros((8, 8)), grading)


def test_bianchi_torsion_free_sl4():
    from precourant import build_sl
    x = [PolyScalar.variable(i, 3) for i in range(3)]
    weyl = WeylStructure.from_entries(3, christoffel={(0, 1, 2): x[2], (0, 2, 1): x[2], (1, 0, 0): x[1]},
                                      rho={(0, 0): x[1]})
    assert weyl.is_torsion_free()
    conn = TractorConnection(*build_sl(4), weyl)
    assert conn.bianchi_defects((F(1), F(1, 2), F(-1))) == []


def test_change_splitting_preserves_filtration(sl3):
    alg, grading = sl3
    ups = [0] * 6 + [F(1), F(-2)]
    x = alg.unit(0)  # g_-1
    y = change_splitting(grading, ups, x)
    assert y[0] == 1 and grading.filtration_level([a - b for a, b in zip(y, x)]) >= 0
    with pytest.raises(ValueError):
        change_splitting(grading, alg.unit(0), x)


def test_weyl_validation():
    with pytest.raises(ValueError):
        WeylStructure.from_entries(2, christoffel={(0, 0, 5): PolyScalar.variable(0, 2)})
