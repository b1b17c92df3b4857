from fractions import Fraction as F

import numpy as np
import pytest

from precourant import lie
from precourant.lie import build_sl, graded_project, sl_coordinates, sl_matrix


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sl_structure_sweeps(n):
    alg, grading = build_sl(n)
    assert alg.dim == n * n - 1
    assert not alg.antisymmetry_violations()
    assert not alg.jacobi_violations()
    assert alg.killing_is_symmetric()
    assert not alg.invariance_violations()
    assert not grading.compatibility_violations()
    assert not grading.orthogonality_violations()
    assert not grading.grading_element_violations()
    assert grading.dims() == {-1: n - 1, 0: (n - 1) ** 2, 1: n - 1}


def test_sl2_killing_and_grading_element(sl2):
    alg, grading = sl2
    assert alg.basis_names == ("E10", "H0", "E01")
    assert alg.killing_matrix.tolist() == [[0, 0, 4], [0, 8, 0], [4, 0, 0]]
    assert list(grading.grading_element) == [0, F(1, 2), 0]


def test_sl3_grading_element(sl3):
    alg, grading = sl3
    assert list(grading.grading_element) == [0, 0, 0, 0, F(2, 3), F(1, 3), 0, 0]


def test_killing_matches_trace_form(sl3):
    # B(X, Y) = 2n tr(XY) on sl(n)
    alg, _ = sl3
    for i in range(alg.dim):
        for j in range(alg.dim):
            tr = (sl_matrix(3, alg.unit(i)).dot(sl_matrix(3, alg.unit(j)))).trace()
            assert alg.killing_matrix[i, j] == 6 * tr


def test_coordinates_roundtrip(sl3):
    alg, _ = sl3
    v = [F(k, 3) - 1 for k in range(alg.dim)]
    assert sl_coordinates(3, sl_matrix(3, v)) == v


def test_build_sl_rejects():
    with pytest.raises(ValueError):
        build_sl(1)
    with pytest.raises(ValueError):
        build_sl(3, "borel")


def test_bad_structure_constants_rejected():
    c = np.zeros((2, 2, 2), dtype=object)
    c[:, :, :] = F(0)
    c[0, 1, 0] = F(1)  # not antisymmetric
    with pytest.raises(ValueError):
        lie.LieAlgebraSpec(2, c)


def test_graded_project(sl3):
    alg, grading = sl3
    v = [F(i + 1) for i in range(alg.dim)]
    parts = [graded_project(grading, v, j) for j in (-1, 0, 1)]
    assert [sum(t) for t in zip(*parts)] == v
    with pytest.raises(ValueError):
        graded_project(grading, v, 2)


def test_grading_element_eigenvalues(sl3):
    alg, grading = sl3
    e = list(grading.grading_element)
    for j in (-1, 0, 1):
        for i in grading.indices(j):
            assert alg.bracket(e, alg.unit(i)) == [j * x for x in alg.unit(i)]


def test_codifferential_squares_to_zero(sl3):
    _, grading = sl3
    assert lie.codifferential_squared_defects(grading) == []


def test_codifferential_rejects_non_perp_input(sl3):
    alg, grading = sl3
    d = alg.dim
    phi = np.zeros((d, d, d), dtype=object)
    phi[:, :, :] = F(0)
    phi[0, 1, 0], phi[1, 0, 0] = F(1), F(-1)  # g_-1 slots, not in p^perp
    with pytest.raises(ValueError):
        lie.codifferential(grading, phi)


def test_id_minus_m_injective():
    assert lie.id_minus_m_rank_on_wedge(8) == (224, 224)
    assert lie.id_minus_m_rank_on_wedge(3) == (9, 9)


def test_id_minus_m_kills_symmetric_in_outer_slots():
    t = np.zeros((2, 2, 2), dtype=object)
    t[:, :, :] = F(0)
    t[0, 1, 0] = F(1)
    assert not (lie.id_minus_m(t) != 0).any()


@pytest.mark.parametrize("n", [2, 3])
def test_phi_map_injective(n):
    alg, _ = build_sl(n)
    assert lie.phi_map_rank(alg) == alg.dim


def test_phi_map_recovers_form(sl3):
    alg, _ = sl3
    v = [F(1), 0, F(-2), 0, F(1, 2), 0, 0, F(3)]
    w = lie.phi_map(alg, v)
    beta = lie.phi_form(alg, v)
    for i in range(alg.dim):
        for j in range(alg.dim):
            assert lie.contract_bivector(alg, w, alg.unit(i), alg.unit(j)) == beta[i, j]
