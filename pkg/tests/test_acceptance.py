"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the per-criterion summary is
printed at the end of the session.
"""
import math
import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE, ROOT
from precourant import BracketContext, build_sl, lie
from precourant.checks import run_check
from precourant.report import run_scenario, strip_elapsed
from precourant.scenario import load_scenario

SCEN = ROOT / "scenarios"


@contextmanager
def criterion(num, title):
    ACCEPTANCE[num] = (title, False)
    yield
    ACCEPTANCE[num] = (title, True)


def _ctx(name):
    scen = load_scenario(SCEN / name)
    return scen, BracketContext(scen.build_connection()), scen.sample_points()


def _all_pass(records):
    bad = [r for r in records if r["status"] != "pass"]
    assert not bad, f"{bad[0]['check']} failed at point {bad[0]['point']}: {bad[0]['defect']}"


def test_criterion_1_algebra_foundations():
    with criterion(1, "algebra foundations for sl(2), sl(3), exact, < 1 s"):
        t0 = time.perf_counter()
        for n in (2, 3):
            alg, grading = build_sl(n)
            assert not alg.antisymmetry_violations()
            assert not alg.jacobi_violations()
            assert alg.killing_is_symmetric()
            assert not alg.invariance_violations()
            assert lie.linalg.rank(alg.killing_matrix.tolist()) == alg.dim
            assert not grading.compatibility_violations()
            assert not grading.orthogonality_violations()
            assert not grading.grading_element_violations()
        assert time.perf_counter() - t0 < 1.0


def test_criterion_2_flat_model():
    with criterion(2, "flat sl(3): kappa = 0, Courant axioms and J = 0, 50 trials x 20 points, < 30 s"):
        t0 = time.perf_counter()
        scen, ctx, points = _ctx("flat_sl3.json")
        assert len(points) == 20 and scen.trials >= 50
        for p in points:
            assert not (ctx.connection.kappa_bilinear(p) != 0).any()
        for check in ("symmetric-part", "axiom3", "axiom2", "flat-courant"):
            _all_pass(run_check(check, ctx, points, scen.seed, scen.trials))
        assert time.perf_counter() - t0 < 30


def test_criterion_3_curved_identities():
    with criterion(3, "curved sl(3): six identity checks over 50 trials, frame-vs-direct at 5 points, < 2 min"):
        t0 = time.perf_counter()
        scen, ctx, points = _ctx("curved_sl3.json")
        for check in ("symmetric-part", "axiom3", "axiom2", "df-bracket",
                      "jacobiator-tensoriality", "jacobiator-skew"):
            _all_pass(run_check(check, ctx, points, scen.seed, scen.trials))
        frame = run_check("frame-vs-direct", ctx, points, scen.seed, scen.trials)
        assert len(frame) == 5
        _all_pass(frame)
        assert time.perf_counter() - t0 < 120


def test_criterion_4_homogeneity_theorem():
    with criterion(4, "hom(J) = hom(kappa) = 2 and J != 0 where kappa != 0 (curved sl(3))"):
        scen, ctx, points = _ctx("curved_sl3.json")
        records = run_check("hom-theorem", ctx, points, scen.seed, scen.trials)
        active = [r for r in records if r["status"] != "vacuous"]
        assert active, "kappa vanishes at every sample point"
        for r in active:
            d = r["details"]
            assert d["hom_kappa"] == "2"
            assert d["lower_bound_holds"]
            assert d["quadratic_bound_holds"]
        for r in active:
            d = r["details"]
            assert d["jacobiator_nonzero"], (
                f"J(p) = 0 at {r['point']} although hom(kappa) = {d['hom_kappa']}; hom(J) = {d['hom_J']}")
            assert d["hom_J"] == d["hom_kappa"]


def test_criterion_5_linear_operators():
    with criterion(5, "Id - m rank 224/224, phi injective, d* d* = 0 on a spanning set, < 10 s"):
        t0 = time.perf_counter()
        alg, grading = build_sl(3)
        assert lie.id_minus_m_rank_on_wedge(alg.dim) == (224, 224)
        assert lie.phi_map_rank(alg) == alg.dim
        assert lie.codifferential_squared_defects(grading) == []
        assert time.perf_counter() - t0 < 10


def test_criterion_6_curvature_self_consistency():
    with criterion(6, "ad(kappa_ab) = [nabla_a, nabla_b] on all 8 basis sections, flat and curved"):
        for name in ("flat_sl3.json", "curved_sl3.json"):
            _, ctx, _ = _ctx(name)
            conn = ctx.connection
            for i in range(conn.algebra.dim):
                s = conn.basis_section(i)
                lhs = conn.nabla(conn.nabla(s)[1])[0] - conn.nabla(conn.nabla(s)[0])[1]
                assert lhs == conn.bracket(conn.curvature[0, 1], s)


def test_criterion_7_determinism():
    with criterion(7, "same seed gives identical reports modulo timing"):
        for name in ("flat_sl3.json", "curved_sl3.json"):
            scen = load_scenario(SCEN / name)
            a, ca = run_scenario(scen, trials=3)
            b, cb = run_scenario(scen, trials=3)
            assert ca == cb
            assert strip_elapsed(a) == strip_elapsed(b)


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
