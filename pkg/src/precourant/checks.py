"""Check catalog and the seeded runner behind ``precourant run``.

Every check produces one or more records. Trial-based checks draw random
polynomial sections from ``random.Random(f"{seed}:{check}:{trial}")`` and
evaluate each trial at every sample point, so a failing record names the
point and the trial seed that reproduce it.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import lie
from .courant import (BracketContext, PointwiseData, courant_bracket, courant_bracket_at,
                      d_pairing, frame_at, jacobiator_frame, jacobiator_frame_parts,
                      jacobiator_on_frame, _derive)
from .patch import PolyScalar, TractorField, exterior_d, frac_str
from .tractor import homogeneity, normality_defect

FRAME_POINTS = 5


@dataclass(frozen=True)
class CheckInfo:
    id: str
    description: str
    anchor: str
    kind: str  # "trial", "point" or "global"


CATALOG: dict[str, CheckInfo] = {c.id: c for c in [
    CheckInfo("axiom2", "pi(x).B(y,y) = 2 B(x,[y,y]) on random sections",
              "Courant axiom: anchor derivative of B(y,y)", "trial"),
    CheckInfo("axiom3", "pi(x).B(y,z) = B([x,y],z) + B(y,[x,z]) on random sections",
              "Courant axiom: invariance of B under [x, .]", "trial"),
    CheckInfo("symmetric-part", "[x,x] = 1/2 dB(x,x) and [x,y] + [y,x] = dB(x,y)",
              "symmetric part of the bracket is dB", "trial"),
    CheckInfo("df-bracket", "[df, y] = 0 for exact one-forms df",
              "exact forms are central on the left", "trial"),
    CheckInfo("jacobiator-tensoriality", "J(fx,y,z) = f J(x,y,z)",
              "pre-Courant: the Jacobiator is a tensor", "trial"),
    CheckInfo("jacobiator-skew", "J is antisymmetric in (y,z) and in (x,y)",
              "pre-Courant: the Jacobiator is totally skew", "trial"),
    CheckInfo("flat-courant", "J(x,y,z) = 0 when the tractor connection is flat",
              "flat case: the bracket is Courant", "trial"),
    CheckInfo("frame-vs-direct", "closed-form J on a nabla-annihilated frame equals nested brackets",
              "pointwise Jacobiator on a parallel-at-p frame", "point"),
    CheckInfo("hom-theorem", "J(p) != 0 and hom(J) = hom(kappa) where kappa(p) != 0",
              "homogeneity theorem for the Jacobiator", "point"),
    CheckInfo("regularity", "hom(kappa) >= 1", "regular curvature", "point"),
    CheckInfo("normality", "reports whether the codifferential of kappa vanishes",
              "normal curvature (d* kappa = 0)", "point"),
    CheckInfo("bianchi-torsionfree", "cyclic sum of nabla kappa vanishes for torsion-free Weyl data",
              "Bianchi identity, torsion-free case", "point"),
    CheckInfo("id-minus-m-kernel", "Id - m is injective on wedge^2 g (x) g",
              "Id - m step of the homogeneity argument", "global"),
    CheckInfo("phi-kernel", "v -> B-dual of B(v,{.,.}) is injective",
              "phi step of the homogeneity argument", "global"),
    CheckInfo("codiff-squared", "d* o d* = 0 on a spanning set of wedge^3 p^perp (x) g",
              "Lie algebra homology codifferential", "global"),
]}

CHECK_IDS = sorted(CATALOG)


# -- random data -------------------------------------------------------------------

def _monomials(n: int, max_deg: int = 2):
    return [m for m in itertools.product(range(max_deg + 1), repeat=n) if sum(m) <= max_deg]


def random_scalar(rng: random.Random, n: int) -> PolyScalar:
    """Degree <= 2 polynomial with integer coefficients in [-3, 3]."""
    return PolyScalar(n, {m: rng.randint(-3, 3) for m in _monomials(n)})


def random_section(rng: random.Random, ctx: BracketContext) -> TractorField:
    n = ctx.n
    return TractorField(ctx.algebra, [random_scalar(rng, n) for _ in range(ctx.algebra.dim)])


def trial_seed(seed: int, check: str, trial: int) -> str:
    return f"{seed}:{check}:{trial}"


# -- per-trial evaluators ---------------------------------------------------------------
# Each returns one defect vector (list of Fractions) per sample point.

class _Brackets:
    """Memoised polynomial brackets and their 1-jets for one trial."""

    def __init__(self, ctx, sections: dict):
        self.ctx, self.s, self.memo, self.jets = ctx, sections, {}, {}

    def __call__(self, a, b) -> TractorField:
        if (a, b) not in self.memo:
            self.memo[(a, b)] = courant_bracket(self.s[a], self.s[b], self.ctx)
        return self.memo[(a, b)]

    def _jet(self, key, k, point):
        if (key, k) not in self.jets:
            f = self.s[key] if isinstance(key, str) else self(*key)
            self.jets[(key, k)] = (f.evaluate(point), [f.partial(a).evaluate(point) for a in range(self.ctx.n)])
        return self.jets[(key, k)]

    def at(self, u, v, k, point, pd: PointwiseData) -> list[Fraction]:
        return pd.bracket(*self._jet(u, k, point), *self._jet(v, k, point))

    def jacobiator(self, a, b, c, k, point, pd: PointwiseData) -> list[Fraction]:
        """``J(a, b, c)`` at sample point number ``k``."""
        return pd.add(self.at(a, (b, c), k, point, pd),
                      pd.scale(-1, self.at((a, b), c, k, point, pd)),
                      pd.scale(-1, self.at(b, (a, c), k, point, pd)))


def _eval_axiom2(ctx, rng, points, datas):
    x, y = random_section(rng, ctx), random_section(rng, ctx)
    conn = ctx.connection
    field = _derive(conn.anchor(x), conn.killing(y, y)) - conn.killing(x, courant_bracket(y, y, ctx)) * 2
    return [[field.evaluate(p)] for p in points]


def _eval_axiom3(ctx, rng, points, datas):
    x, y, z = (random_section(rng, ctx) for _ in range(3))
    conn = ctx.connection
    field = (_derive(conn.anchor(x), conn.killing(y, z))
             - conn.killing(courant_bracket(x, y, ctx), z) - conn.killing(y, courant_bracket(x, z, ctx)))
    return [[field.evaluate(p)] for p in points]


def _eval_symmetric(ctx, rng, points, datas):
    x, y = random_section(rng, ctx), random_section(rng, ctx)
    half = courant_bracket(x, x, ctx) - d_pairing(x, x, ctx) * Fraction(1, 2)
    both = courant_bracket(x, y, ctx) + courant_bracket(y, x, ctx) - d_pairing(x, y, ctx)
    return [half.evaluate(p) + both.evaluate(p) for p in points]


def _eval_df(ctx, rng, points, datas):
    f, y = random_scalar(rng, ctx.n), random_section(rng, ctx)
    df = ctx.connection.include_cotangent(exterior_d(f))
    return [courant_bracket_at(df, y, ctx, p, pd) for p, pd in zip(points, datas())]


def _eval_tensoriality(ctx, rng, points, datas):
    f = random_scalar(rng, ctx.n)
    x, y, z = (random_section(rng, ctx) for _ in range(3))
    br = _Brackets(ctx, {"x": x, "y": y, "z": z, "fx": x * f})
    out = []
    for k, (p, pd) in enumerate(zip(points, datas())):
        lhs = br.jacobiator("fx", "y", "z", k, p, pd)
        rhs = br.jacobiator("x", "y", "z", k, p, pd)
        fp = f.evaluate(p)
        out.append([a - fp * b for a, b in zip(lhs, rhs)])
    return out


def _eval_skew(ctx, rng, points, datas):
    x, y, z = (random_section(rng, ctx) for _ in range(3))
    br = _Brackets(ctx, {"x": x, "y": y, "z": z})
    out = []
    for k, (p, pd) in enumerate(zip(points, datas())):
        j = br.jacobiator("x", "y", "z", k, p, pd)
        out.append(pd.add(j, br.jacobiator("x", "z", "y", k, p, pd))
                   + pd.add(j, br.jacobiator("y", "x", "z", k, p, pd)))
    return out


def _eval_flat(ctx, rng, points, datas):
    x, y, z = (random_section(rng, ctx) for _ in range(3))
    br = _Brackets(ctx, {"x": x, "y": y, "z": z})
    return [br.jacobiator("x", "y", "z", k, p, pd) for k, (p, pd) in enumerate(zip(points, datas()))]


_TRIAL_EVALUATORS: dict[str, Callable] = {
    "axiom2": _eval_axiom2,
    "axiom3": _eval_axiom3,
    "symmetric-part": _eval_symmetric,
    "df-bracket": _eval_df,
    "jacobiator-tensoriality": _eval_tensoriality,
    "jacobiator-skew": _eval_skew,
    "flat-courant": _eval_flat,
}


# -- record helpers ---------------------------------------------------------------------

def _defect(vec) -> str | list[str]:
    if all(v == 0 for v in vec):
        return "0"
    return [frac_str(v) for v in vec]


def _point_str(p):
    return [frac_str(c) for c in p]


def _record(check, index, point, status, defect="0", witness=None, details=None):
    return {
        "check": check,
        "point_index": index,
        "point": None if point is None else _point_str(point),
        "status": status,
        "witness": witness,
        "defect": defect,
        "details": details or {},
    }


class _Pointwise:
    """Lazy per-point jet data shared by all trials of one check."""

    def __init__(self, ctx, points):
        self.ctx, self.points, self._data = ctx, points, None

    def __call__(self):
        if self._data is None:
            self._data = [PointwiseData(self.ctx, p) for p in self.points]
        return self._data


def run_trial_check(check: str, ctx: BracketContext, points, seed: int, trials,
                    point_indices=None) -> list[dict]:
    """Run ``check`` for the given trial indices; one record per point."""
    evaluator = _TRIAL_EVALUATORS[check]
    idx = list(point_indices) if point_indices is not None else list(range(len(points)))
    pts = [points[i] for i in idx]
    datas = _Pointwise(ctx, pts)
    first_fail: dict[int, tuple[int, list]] = {}
    count = 0
    for t in trials:
        rng = random.Random(trial_seed(seed, check, t))
        for k, vec in enumerate(evaluator(ctx, rng, pts, datas)):
            if k not in first_fail and any(v != 0 for v in vec):
                first_fail[k] = (t, vec)
        count += 1
    records = []
    for k, i in enumerate(idx):
        if k in first_fail:
            t, vec = first_fail[k]
            witness = {"trial": t, "section_seed": trial_seed(seed, check, t)}
            records.append(_record(check, i, points[i], "fail", _defect(vec), witness, {"trials": count}))
        else:
            records.append(_record(check, i, points[i], "pass", "0", None, {"trials": count}))
    return records


def _kappa_vanishes(ctx, points) -> bool:
    return all(not (ctx.connection.kappa_bilinear(p) != 0).any() for p in points)


def _fmt_hom(h) -> str:
    return "inf" if h == math.inf else str(h)


def _check_flat(ctx, points, seed, trials):
    if not _kappa_vanishes(ctx, points):
        return [_record("flat-courant", None, None, "vacuous",
                        details={"reason": "kappa is nonzero at a sample point"})]
    return run_trial_check("flat-courant", ctx, points, seed, trials)


def _check_frame(ctx, points, seed, trials):
    out = []
    for i, p in enumerate(points[:FRAME_POINTS]):
        conn = ctx.connection
        parallel = all(not any(d.evaluate(p)) for e in frame_at(ctx, p) for d in conn.nabla(e))
        direct = jacobiator_on_frame(ctx, p)
        closed = jacobiator_frame(ctx, p)
        diff = direct - closed
        bad = list(zip(*[a.tolist() for a in (diff != 0).nonzero()]))
        details = {"frame_parallel_at_point": parallel, "mismatched_entries": len(bad),
                   "jacobiator_nonzero": bool((direct != 0).any())}
        if bad or not parallel:
            defect = _defect(diff[bad[0][:3]].tolist()) if bad else ["frame not parallel"]
            if bad:
                details["first_mismatch"] = list(bad[0][:3])
            out.append(_record("frame-vs-direct", i, p, "fail", defect, {"trial": None, "section_seed": None}, details))
        else:
            out.append(_record("frame-vs-direct", i, p, "pass", "0", None, details))
    return out


def _check_hom(ctx, points, seed, trials):
    grading = ctx.grading
    out = []
    for i, p in enumerate(points):
        h_k = homogeneity(ctx.connection.kappa_bilinear(p), grading)
        if h_k == math.inf:
            out.append(_record("hom-theorem", i, p, "vacuous",
                               details={"reason": "kappa(p) = 0", "hom_kappa": "inf"}))
            continue
        lin, quad = jacobiator_frame_parts(ctx, p)
        jt = lin + quad
        h_j = homogeneity(jt, grading)
        h_q = homogeneity(quad, grading)
        nonzero = bool((jt != 0).any())
        details = {"hom_kappa": _fmt_hom(h_k), "hom_J": _fmt_hom(h_j),
                   "jacobiator_nonzero": nonzero, "lower_bound_holds": h_j >= h_k,
                   "hom_quadratic": _fmt_hom(h_q), "quadratic_bound_holds": h_q >= 2 * h_k}
        ok = nonzero and h_j == h_k and h_q >= 2 * h_k
        if ok:
            out.append(_record("hom-theorem", i, p, "pass", "0", None, details))
        else:
            gap = "inf" if h_j == math.inf else frac_str(Fraction(h_j - h_k))
            out.append(_record("hom-theorem", i, p, "fail", [gap], {"trial": None, "section_seed": None}, details))
    return out


def _check_regularity(ctx, points, seed, trials):
    out = []
    for i, p in enumerate(points):
        h = homogeneity(ctx.connection.kappa_bilinear(p), ctx.grading)
        details = {"hom_kappa": _fmt_hom(h)}
        if h >= 1:
            out.append(_record("regularity", i, p, "pass", "0", None, details))
        else:
            out.append(_record("regularity", i, p, "fail", [frac_str(Fraction(1 - h))],
                               {"trial": None, "section_seed": None}, details))
    return out


def _check_normality(ctx, points, seed, trials):
    out = []
    for i, p in enumerate(points):
        dk = normality_defect(ctx.connection, p)
        nz = int((dk != 0).sum())
        out.append(_record("normality", i, p, "pass", "0", None,
                           {"normal": nz == 0, "codifferential_nonzero_entries": nz}))
    return out


def _check_bianchi(ctx, points, seed, trials):
    if not ctx.weyl.is_torsion_free():
        return [_record("bianchi-torsionfree", None, None, "vacuous",
                        details={"reason": "Weyl connection has torsion"})]
    if ctx.n < 3:
        return [_record("bianchi-torsionfree", None, None, "vacuous",
                        details={"reason": "patch dimension < 3 has no distinct index triples"})]
    out = []
    for i, p in enumerate(points):
        bad = ctx.connection.bianchi_defects(p)
        if bad:
            out.append(_record("bianchi-torsionfree", i, p, "fail", [str(len(bad))],
                               {"trial": None, "section_seed": None},
                               {"failing_triples": [[a + 1 for a in t] for t in bad]}))
        else:
            out.append(_record("bianchi-torsionfree", i, p, "pass"))
    return out


def _global(check, defect_value: int, details):
    status = "pass" if defect_value == 0 else "fail"
    return [_record(check, None, None, status, str(defect_value), None, details)]


def _check_id_minus_m(ctx, points, seed, trials):
    rank, dim = lie.id_minus_m_rank_on_wedge(ctx.algebra.dim)
    return _global("id-minus-m-kernel", dim - rank, {"rank": rank, "dimension": dim})


def _check_phi(ctx, points, seed, trials):
    rank = lie.phi_map_rank(ctx.algebra)
    return _global("phi-kernel", ctx.algebra.dim - rank, {"rank": rank, "dimension": ctx.algebra.dim})


def _check_codiff(ctx, points, seed, trials):
    bad = lie.codifferential_squared_defects(ctx.grading)
    details = {"failing_basis_elements": len(bad)}
    return _global("codiff-squared", len(bad), details)


def _trial(check):
    return lambda ctx, points, seed, trials: run_trial_check(check, ctx, points, seed, trials)


_RUNNERS: dict[str, Callable] = {
    **{c: _trial(c) for c in _TRIAL_EVALUATORS if c != "flat-courant"},
    "flat-courant": _check_flat,
    "frame-vs-direct": _check_frame,
    "hom-theorem": _check_hom,
    "regularity": _check_regularity,
    "normality": _check_normality,
    "bianchi-torsionfree": _check_bianchi,
    "id-minus-m-kernel": _check_id_minus_m,
    "phi-kernel": _check_phi,
    "codiff-squared": _check_codiff,
}
assert set(_RUNNERS) == set(CATALOG)


def run_check(check: str, ctx: BracketContext, points, seed: int, trials: int) -> list[dict]:
    """All records for one check, each stamped with its elapsed time."""
    if check not in _RUNNERS:
        raise KeyError(f"unknown check id {check!r}")
    t0 = time.perf_counter()
    records = _RUNNERS[check](ctx, points, seed, range(trials))
    share = (time.perf_counter() - t0) / max(len(records), 1)
    for r in records:
        r["elapsed"] = round(share, 6)
    return records


def check_status(records: list[dict]) -> str:
    statuses = {r["status"] for r in records}
    if "fail" in statuses:
        return "fail"
    if statuses == {"vacuous"}:
        return "vacuous"
    return "pass"
