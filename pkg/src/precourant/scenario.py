"""Scenario files: JSON descriptions of a geometry plus the checks to run.

Schema (all rationals are strings ``"p"`` or ``"p/q"``)::

    {
      "algebra": {"builder": "sl", "n": 3}
                 | {"structure_constants": [[[c, ...], ...], ...], "basis_names": [...]},
      "grading": "first-column" | {"grades": [g_0, g_1, ...]},
      "patch_dim": 2,
      "weyl": {
        "christoffel": [{"index": [a, b, c], "poly": POLY}, ...],   # Gamma^a_{bc}, 1-based
        "rho": [{"index": [a, b], "poly": POLY}, ...]               # P_{ab}, 1-based
      },
      "points": [["1", "1/2"], ...],        # optional; default is 20 seeded points
      "seed": 0,
      "checks": ["axiom2", ...] | "all",
      "trials": 50
    }

``POLY`` is a list of ``{"coeff": "p/q", "monomial": [e_1, ..., e_n]}``.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .lie import LieAlgebraSpec, ParabolicGrading, build_sl
from .patch import PolyScalar, frac_str, parse_rational
from .tractor import TractorConnection, WeylStructure

DEFAULT_TRIALS = 50
DEFAULT_POINTS = 20


class ScenarioError(ValueError):
    """A scenario file does not parse or fails validation."""


@dataclass
class Scenario:
    algebra: dict
    grading: object
    patch_dim: int
    christoffel: dict = field(default_factory=dict)  # (a, b, c) 0-based -> PolyScalar
    rho: dict = field(default_factory=dict)  # (a, b) 0-based -> PolyScalar
    points: list | None = None
    seed: int = 0
    checks: list | str = "all"
    trials: int = DEFAULT_TRIALS

    # -- construction ---------------------------------------------------------

    def build_algebra(self) -> tuple[LieAlgebraSpec, ParabolicGrading]:
        spec = self.algebra
        try:
            if "builder" in spec:
                if spec["builder"] != "sl":
                    raise ScenarioError(f"unknown algebra builder {spec['builder']!r}")
                selector = self.grading if isinstance(self.grading, str) else None
                if selector is None:
                    raise ScenarioError("builder algebras take a named grading selector")
                return build_sl(int(spec["n"]), selector)
            consts = np.array([[[parse_rational(c) for c in row] for row in plane]
                               for plane in spec["structure_constants"]], dtype=object)
            alg = LieAlgebraSpec(consts.shape[0], consts, tuple(spec.get("basis_names", ())))
            if not isinstance(self.grading, dict) or "grades" not in self.grading:
                raise ScenarioError("raw structure constants need an explicit {'grades': [...]} grading")
            return alg, ParabolicGrading(alg, tuple(self.grading["grades"]))
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"invalid algebra/grading: {exc}") from exc

    def build_connection(self) -> TractorConnection:
        alg, grading = self.build_algebra()
        dim_m1 = len(grading.indices(-1))
        if self.patch_dim != dim_m1:
            raise ScenarioError(f"patch_dim {self.patch_dim} does not match dim g_-1 = {dim_m1}")
        weyl = WeylStructure.from_entries(self.patch_dim, self.christoffel, self.rho)
        try:
            return TractorConnection(alg, grading, weyl)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from exc

    def sample_points(self) -> list[tuple[Fraction, ...]]:
        if self.points is not None:
            return [tuple(p) for p in self.points]
        return default_points(self.seed, self.patch_dim)

    # -- (de)serialisation ------------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise ScenarioError("scenario must be a JSON object")
        try:
            n = int(data["patch_dim"])
            algebra = data["algebra"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"missing or malformed required field: {exc}") from exc
        if n < 1:
            raise ScenarioError("patch_dim must be positive")
        weyl = data.get("weyl", {}) or {}
        christoffel, rho = {}, {}
        try:
            for entry in weyl.get("christoffel", []):
                idx = _index(entry["index"], 3, n)
                christoffel[idx] = PolyScalar.from_literal(entry["poly"], n)
            for entry in weyl.get("rho", []):
                idx = _index(entry["index"], 2, n)
                rho[idx] = PolyScalar.from_literal(entry["poly"], n)
            points = None
            if data.get("points") is not None:
                points = [tuple(parse_rational(c) for c in p) for p in data["points"]]
                if any(len(p) != n for p in points):
                    raise ScenarioError(f"every sample point needs {n} coordinates")
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed weyl data or points: {exc}") from exc
        checks = data.get("checks", "all")
        if checks != "all" and not (isinstance(checks, list) and all(isinstance(c, str) for c in checks)):
            raise ScenarioError("checks must be 'all' or a list of check ids")
        trials = data.get("trials", DEFAULT_TRIALS)
        seed = data.get("seed", 0)
        if not isinstance(trials, int) or trials < 1 or not isinstance(seed, int):
            raise ScenarioError("trials must be a positive integer and seed an integer")
        return cls(algebra, data.get("grading", "first-column"), n, christoffel, rho,
                   points, seed, checks, trials)

    def to_dict(self) -> dict:
        out = {
            "algebra": self.algebra,
            "grading": self.grading,
            "patch_dim": self.patch_dim,
            "weyl": {
                "christoffel": [{"index": [i + 1 for i in k], "poly": p.to_literal()}
                                for k, p in sorted(self.christoffel.items())],
                "rho": [{"index": [i + 1 for i in k], "poly": p.to_literal()}
                        for k, p in sorted(self.rho.items())],
            },
            "seed": self.seed,
            "checks": self.checks,
            "trials": self.trials,
        }
        if self.points is not None:
            out["points"] = [[frac_str(c) for c in p] for p in self.points]
        return out

    def digest(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def _index(idx, length, n) -> tuple[int, ...]:
    if not isinstance(idx, list) or len(idx) != length:
        raise ScenarioError(f"index {idx!r} must be a list of {length} integers")
    if any(not isinstance(i, int) or not 1 <= i <= n for i in idx):
        raise ScenarioError(f"index {idx!r} out of range 1..{n}")
    return tuple(i - 1 for i in idx)


def default_points(seed: int, n: int, count: int = DEFAULT_POINTS) -> list[tuple[Fraction, ...]]:
    """Seeded rational points in [-2, 2]^n with denominators at most 4."""
    rng = random.Random(f"{seed}:points")
    pts = []
    for _ in range(count):
        pt = []
        for _ in range(n):
            q = rng.randint(1, 4)
            pt.append(Fraction(rng.randint(-2 * q, 2 * q), q))
        pts.append(tuple(pt))
    return pts


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario {path} is not valid JSON: {exc}") from exc
    return Scenario.from_dict(data)
