"""Run a scenario and assemble its JSON report."""
from __future__ import annotations

import json
from pathlib import Path

from . import __version__
from .checks import CATALOG, CHECK_IDS, check_status, run_check, run_trial_check, trial_seed
from .courant import BracketContext
from .patch import parse_rational
from .scenario import Scenario, ScenarioError

FORMAT = "precourant-report/1"


def resolve_checks(scenario: Scenario, override=None) -> list[str]:
    wanted = override if override is not None else scenario.checks
    if wanted == "all":
        return list(CHECK_IDS)
    unknown = [c for c in wanted if c not in CATALOG]
    if unknown:
        raise ScenarioError(f"unknown check id(s): {', '.join(unknown)}; see list-checks")
    return sorted(set(wanted))


def run_scenario(scenario: Scenario, seed=None, checks=None, trials=None) -> tuple[dict, int]:
    """Execute the requested checks. Returns ``(report, exit_code)``.

    Raises :class:`ScenarioError` for validation problems and lets
    ``CurvatureInconsistency`` propagate.
    """
    seed = scenario.seed if seed is None else seed
    trials = scenario.trials if trials is None else trials
    if trials < 1:
        raise ScenarioError("trials must be positive")
    ids = resolve_checks(scenario, checks)
    conn = scenario.build_connection()
    conn.curvature  # fail early on an ad-inversion inconsistency
    ctx = BracketContext(conn)
    points = (scenario.sample_points() if scenario.points is not None or seed == scenario.seed
              else _reseeded_points(scenario, seed))

    records, summary = [], {}
    for check in ids:
        recs = run_check(check, ctx, points, seed, trials)
        summary[check] = check_status(recs)
        records.extend(recs)
    records.sort(key=lambda r: (r["check"], -1 if r["point_index"] is None else r["point_index"]))
    code = 1 if "fail" in summary.values() else 0
    report = {
        "format": FORMAT,
        "environment": {"seed": seed, "scenario_digest": scenario.digest(), "version": __version__,
                        "trials": trials, "points": len(points)},
        "summary": {"exit_code": code, "checks": summary},
        "records": records,
    }
    return report, code


def _reseeded_points(scenario, seed):
    from .scenario import default_points
    return default_points(seed, scenario.patch_dim)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")


def strip_elapsed(report: dict) -> dict:
    """Copy of ``report`` without timing fields (for determinism comparisons)."""
    out = json.loads(json.dumps(report))
    for r in out["records"]:
        r.pop("elapsed", None)
    return out


def replay_witness(scenario: Scenario, record: dict, seed=None) -> list[dict]:
    """Re-run the single trial and point named by a failing trial-check record."""
    w = record.get("witness") or {}
    if w.get("trial") is None:
        raise ValueError("record has no trial witness to replay")
    seed = scenario.seed if seed is None else seed
    if w["section_seed"] != trial_seed(seed, record["check"], w["trial"]):
        raise ValueError("witness seed does not match this scenario seed")
    ctx = BracketContext(scenario.build_connection())
    point = tuple(parse_rational(c) for c in record["point"])
    return run_trial_check(record["check"], ctx, [point], seed, [w["trial"]])
