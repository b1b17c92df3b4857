"""Command line: ``precourant run | list-checks | validate``.

Exit codes: 0 every non-vacuous check passed, 1 some check failed,
2 the scenario did not parse or validate, 3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import sys

from .checks import CATALOG, CHECK_IDS
from .report import resolve_checks, run_scenario, write_report
from .scenario import ScenarioError, load_scenario
from .tractor import CurvatureInconsistency

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="precourant", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run checks on a scenario and write a JSON report")
    run.add_argument("--scenario", required=True)
    run.add_argument("--report", required=True)
    run.add_argument("--seed", type=int)
    run.add_argument("--checks", help="comma-separated check ids (default: the scenario's list)")
    run.add_argument("--trials", type=int)
    sub.add_parser("list-checks", help="print the check catalog")
    val = sub.add_parser("validate", help="parse and validate a scenario without running it")
    val.add_argument("--scenario", required=True)
    return p


def _list_checks() -> int:
    width = max(map(len, CHECK_IDS))
    for cid in CHECK_IDS:
        info = CATALOG[cid]
        print(f"{cid:<{width}}  {info.description}  [{info.anchor}]")
    return EXIT_OK


def _validate(path) -> int:
    scenario = load_scenario(path)
    resolve_checks(scenario)
    conn = scenario.build_connection()
    print(f"ok: {path} (dim g = {conn.algebra.dim}, patch_dim = {scenario.patch_dim}, "
          f"{len(scenario.sample_points())} points)")
    return EXIT_OK


def _run(args) -> int:
    scenario = load_scenario(args.scenario)
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    report, code = run_scenario(scenario, seed=args.seed, checks=checks, trials=args.trials)
    write_report(report, args.report)
    for cid, status in report["summary"]["checks"].items():
        print(f"{status:<8} {cid}")
    return code


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-checks":
            return _list_checks()
        if args.command == "validate":
            return _validate(args.scenario)
        return _run(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CurvatureInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
