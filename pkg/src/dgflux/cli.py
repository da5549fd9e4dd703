"""Command-line entry points.

Exit codes: 0 success, 1 bad configuration, 2 solver failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .errors import ConfigError, SolverError
from .runner import convergence_study, read_snapshot_csv, run
from .scenario import Scenario, builtin_names, builtin_scenario
from .waves import analyze_waves


def _load_scenario(config: str) -> Scenario:
    if config in builtin_names():
        return builtin_scenario(config)
    return Scenario.load(Path(config))


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.config)
    out_dir = Path(args.out) if args.out else Path("runs") / scenario.name
    result = run(scenario, out_dir=out_dir)
    manifest = result.manifest
    print(f"scenario {scenario.name}: {manifest['n_steps']} steps "
          f"to t = {manifest['final_time']:g} in {manifest['wall_time_s']:.2f}s")
    for snap in result.snapshots:
        print(f"  wrote {out_dir / snap.filename()}")
    print(f"  wrote {out_dir / 'manifest.json'}")
    worst = max(manifest["conservation_defect_rel"])
    print(f"  conservation defect (relative): {worst:.3e}")
    return 0


def _cmd_convergence(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.config)
    try:
        meshes = [int(tok) for tok in args.meshes.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"--meshes wants comma-separated integers: {exc}") from exc
    if len(meshes) < 2:
        raise ConfigError("--meshes needs at least two mesh sizes")
    study = convergence_study(scenario, meshes)
    print(f"{'cells':>8s} {'L1 error':>14s} {'order':>8s}")
    for row in study:
        order = f"{row['order']:.3f}" if row["order"] is not None else "-"
        print(f"{row['n_cells']:>8d} {row['l1_error']:>14.6e} {order:>8s}")
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    snapshot = read_snapshot_csv(Path(args.snapshot))
    report = analyze_waves(
        snapshot,
        x0=args.x0,
        plateau_tol=args.plateau_tol,
        fan_width_cells=args.fan_width,
    )
    verdict = "conclusive" if report.conclusive else "inconclusive"
    print(f"{report.n_waves} waves ({verdict}, {report.plateau_cells} plateau cells)")
    for wave in report.waves:
        print(f"  [{wave.left_edge:g}, {wave.right_edge:g}] "
              f"{wave.kind} ({wave.n_cells} cells)")
    return 0


def _cmd_list_builtin(args: argparse.Namespace) -> int:
    for name in builtin_names():
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgflux",
        description="RKDG solver for conservation laws with discontinuous flux parameters",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and write snapshot CSVs")
    p_run.add_argument("config", help="builtin scenario id or path to a YAML file")
    p_run.add_argument("--out", help="output directory (default: runs/<name>)")
    p_run.set_defaults(func=_cmd_run)

    p_conv = sub.add_parser("convergence", help="mesh-refinement error study")
    p_conv.add_argument("config", help="builtin scenario id or path to a YAML file")
    p_conv.add_argument("--meshes", required=True,
                        help="comma-separated cell counts, e.g. 100,200,400")
    p_conv.set_defaults(func=_cmd_convergence)

    p_an = sub.add_parser("analyze", help="segment a snapshot into plateaus and waves")
    p_an.add_argument("snapshot", help="snapshot CSV written by the run command")
    p_an.add_argument("--x0", type=float, required=True,
                      help="position of the flux-parameter jump (domain coordinate)")
    p_an.add_argument("--plateau-tol", type=float, default=1e-3,
                      help="value-range threshold separating plateau from wave")
    p_an.add_argument("--fan-width", type=int, default=12,
                      help="minimum cell width for a wave to count as fan-like")
    p_an.set_defaults(func=_cmd_analyze)

    p_list = sub.add_parser("list-builtin", help="print builtin scenario ids")
    p_list.set_defaults(func=_cmd_list_builtin)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except yaml.YAMLError as exc:
        print(f"config error: invalid YAML: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
