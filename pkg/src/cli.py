#!/usr/bin/env python3
"""
Swarm Throughput Lab CLI
Command-line interface for throughput formulas, simulations, comparisons and
figure data.

Usage:
    stl throughput parallel --s 3 --t-max 50
    stl simulate --strategy touchrun --s 3 --k 10 --out results/tr.csv
    stl compare --u-min 0.5 --u-max 7 --points 100 --t 10000
    stl oracle-check hex --samples 1000 --seed 7
    stl figures --fig all --out-dir results --quick
"""

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from src import __version__
from src.analysis import comparison, figures, hex_oracle
from src.core.errors import DomainError, SimulationError, ThroughputLabError
from src.core.logging_config import RunLogger, setup_logging
from src.core.model import SwarmParams, throughput_from_arrivals
from src.core.output import ResultTable, RunManifest, manifest_path
from src.core.settings import ExperimentDefaults, LabSettings, load_config
from src.simulation.simulator import SimConfig, StrategyName, simulate
from src.strategies import point_target, touch_run
from src.strategies.compact_lanes import CompactLanesStrategy
from src.strategies.hex_packing import HexPackingStrategy
from src.strategies.parallel_lanes import ParallelLanesStrategy
from src.strategies.touch_run import TouchRunStrategy

EXIT_OK = 0
EXIT_FAILURE = 1

EPILOG = """
Examples:
    # Closed-form f(T) of parallel lanes for a target of radius 3
    stl throughput parallel --s 3 --t-max 50 --dt 0.1

    # Hex packing at 30 degrees, with the N_R / N_S breakdown at T = 20 and 1e4
    stl --deg throughput hex --s 3 --theta 30 --breakdown 20 10000

    # Lane-count scan for touch and run with a turning-rate limit
    stl throughput touchrun --s 3 --v 0.1 --scan-k --omega-max 1.5708

    # Simulate 200 robots and keep a trajectory trace
    stl simulate --strategy hex --s 3 --theta 0.5236 --out runs/hex.csv --trace runs/trace.csv

    # Comparison sweep on 4 worker processes
    stl --jobs 4 compare --u-min 0 --u-max 7 --points 100 --t 10000

    # Regenerate every figure bundle at reduced size
    stl figures --fig all --out-dir results --quick

    # Re-run a manifest and check the outputs are identical
    stl replay results/fhfpLarge/manifest.json

CSV schemas:
    throughput hex          t,f_analytic,f_low,f_high
    throughput <strategy>   t,f_analytic,f_asymptotic   (compact, parallel, touchrun)
    throughput point        theta,delay_ratio
    throughput touchrun --scan-k   k,f_asymptotic,feasible
    simulate                t,n,f          (trace: t,robot_id,x,y,phase)
    compare                 u,f_p,f_h_min,f_h_max,f_h_T,f_t_T,f_t_asym

Environment:
    STL_JOBS, STL_LOG_LEVEL, STL_LOG_FILE, STL_OUTPUT_DIR, STL_CONFIG_PATH
"""


def _add_swarm_arguments(parser: argparse.ArgumentParser, defaults: ExperimentDefaults) -> None:
    parser.add_argument("--s", type=float, required=True, help="Target radius (m)")
    parser.add_argument("--d", type=float, default=defaults.d, help="Minimum robot spacing (m)")
    parser.add_argument("--v", type=float, default=None, help="Robot speed (m/s)")


def _add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, help="Write CSV here instead of stdout")


def create_parser(settings: LabSettings, defaults: ExperimentDefaults) -> argparse.ArgumentParser:
    """Create CLI argument parser."""
    parser = argparse.ArgumentParser(
        prog="stl",
        description="Swarm Throughput Lab - common-target throughput of robot swarms",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=settings.log_level.upper(),
        help=f"Logging level (default: {settings.log_level.upper()})",
    )
    parser.add_argument("--log-file", type=Path, default=settings.log_file, help="JSON log file")
    parser.add_argument(
        "--jobs",
        type=int,
        default=settings.jobs,
        help=f"Worker processes for sweeps (default: STL_JOBS or {settings.jobs})",
    )
    parser.add_argument(
        "--deg", action="store_true", help="Read angle arguments in degrees instead of radians"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    # throughput
    throughput = commands.add_parser(
        "throughput", help="Closed-form throughput of one strategy"
    )
    strategies = throughput.add_subparsers(dest="strategy", required=True)

    point = strategies.add_parser("point", help="Normalized delay for a point target")
    point.add_argument("--samples", type=int, default=defaults.theta_samples)
    point.add_argument(
        "--theta-max", type=float, help="Largest angle (default: 2*pi/3 rad)"
    )
    _add_output_argument(point)

    for name in ("compact", "parallel", "hex", "touchrun"):
        sub = strategies.add_parser(name, help=f"f(T) of {name}")
        _add_swarm_arguments(sub, defaults)
        sub.add_argument("--t-max", type=float, default=100.0, help="Last T of the series (s)")
        sub.add_argument("--dt", type=float, default=defaults.dt, help="T spacing (s)")
        _add_output_argument(sub)
        if name == "hex":
            sub.add_argument("--theta", type=float, help="Packing angle (default: pi/6 rad)")
            sub.add_argument(
                "--breakdown",
                type=float,
                nargs="+",
                metavar="T",
                help="Print the count breakdown at each T as a JSON list",
            )
        if name == "touchrun":
            sub.add_argument("--k", type=int, help="Lane count (default: best feasible)")
            sub.add_argument(
                "--omega-max",
                type=float,
                help=f"Turning-rate limit (default: {defaults.omega_max:.4f} rad/s)",
            )
            sub.add_argument(
                "--no-omega-limit", action="store_true", help="Scan lane counts without a limit"
            )
            sub.add_argument("--scan-k", action="store_true", help="Emit k,f_asymptotic,feasible")

    # simulate
    sim = commands.add_parser("simulate", help="Kinematic simulation of one strategy")
    sim.add_argument("--strategy", choices=[s.value for s in StrategyName], required=True)
    _add_swarm_arguments(sim, defaults)
    sim.add_argument("--n", type=int, default=defaults.n_robots, help="Robots to deliver")
    sim.add_argument("--dt", type=float, default=defaults.dt, help="Sampling step (s)")
    sim.add_argument("--theta", type=float, help="Hex packing angle (default: pi/6 rad)")
    sim.add_argument("--k", type=int, help="Touch-and-run lane count")
    sim.add_argument("--trace", type=Path, help="Write t,robot_id,x,y,phase rows here")
    sim.add_argument("--no-audit", action="store_true", help="Skip the distance audit")
    _add_output_argument(sim)

    # compare
    compare = commands.add_parser("compare", help="Strategy curves over u = s/d")
    compare.add_argument("--u-min", type=float, default=0.0)
    compare.add_argument("--u-max", type=float, default=7.0)
    compare.add_argument("--points", type=int, default=100)
    compare.add_argument("--t", type=float, default=1e4, help="Fixed horizon T (s)")
    compare.add_argument("--v", type=float, default=defaults.lane_speed)
    compare.add_argument("--d", type=float, default=defaults.d)
    compare.add_argument("--theta-samples", type=int, default=defaults.theta_samples)
    _add_output_argument(compare)

    # oracle-check
    oracle = commands.add_parser("oracle-check", help="Closed form against brute force")
    oracle.add_argument("target", choices=["hex"])
    oracle.add_argument("--samples", type=int, default=1000)
    oracle.add_argument("--seed", type=int, default=7)
    oracle.add_argument("--t-max", type=float, help="Largest window T (default: 50 d/v)")

    # figures
    figs = commands.add_parser("figures", help="CSV data behind the throughput figures")
    figs.add_argument("--fig", choices=sorted(figures.FIGURES) + ["all"], default="all")
    figs.add_argument("--out-dir", type=Path, default=Path(settings.output_dir))
    figs.add_argument("--quick", action="store_true", help="Reduced sizes for smoke runs")

    # replay
    replay = commands.add_parser("replay", help="Re-run a manifest and compare outputs")
    replay.add_argument("manifest", type=Path)

    return parser


def _angle(
    value: Optional[float], args: argparse.Namespace, default: Optional[float] = None
) -> Optional[float]:
    """Angle argument in radians; `default` is already in radians."""
    if value is None:
        return default
    return math.radians(value) if args.deg else value


def _params(args: argparse.Namespace, default_speed: float) -> SwarmParams:
    return SwarmParams(v=args.v if args.v is not None else default_speed, d=args.d, s=args.s)


def _emit(body: str, out: Optional[Path], outputs: List[Path]) -> None:
    """Write `body` to `out`, or to stdout when no path was given."""
    if out is None:
        sys.stdout.write(body)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(body)
    outputs.append(out)


def run_throughput(
    args: argparse.Namespace, defaults: ExperimentDefaults, outputs: List[Path]
) -> int:
    if args.strategy == "point":
        curve = point_target.delay_curve(
            args.samples, _angle(args.theta_max, args, 2 * math.pi / 3) or 0.0
        )
        rows = [{"theta": t, "delay_ratio": r} for t, r in curve]
        _emit(ResultTable.from_rows(rows, ["theta", "delay_ratio"]).to_csv(), args.out, outputs)
        return EXIT_OK

    if args.strategy == "touchrun":
        p = _params(args, defaults.touch_run_speed)
        omega_max = _angle(args.omega_max, args, defaults.omega_max)
        if args.no_omega_limit:
            omega_max = None
        if args.scan_k:
            rows = [
                {"k": K, "f_asymptotic": f, "feasible": ok}
                for K, f, ok in touch_run.scan_k(p, omega_max)
            ]
            table = ResultTable.from_rows(rows, ["k", "f_asymptotic", "feasible"])
            _emit(table.to_csv(), args.out, outputs)
            return EXIT_OK
        K = args.k if args.k is not None else touch_run.best_K(p, omega_max)[0]
        strategy: Any = TouchRunStrategy(p, K)
    else:
        p = _params(args, defaults.lane_speed)
        if args.strategy == "compact":
            strategy = CompactLanesStrategy(p)
        elif args.strategy == "parallel":
            strategy = ParallelLanesStrategy(p)
        else:
            strategy = HexPackingStrategy(p, _angle(args.theta, args, math.pi / 6) or 0.0)
            if args.breakdown is not None:
                breakdowns = [strategy.breakdown(T) for T in args.breakdown]
                text = json.dumps(
                    [{**b.model_dump(), "total": b.total} for b in breakdowns], indent=2
                )
                _emit(text + "\n", args.out, outputs)
                return EXIT_OK

    rows = strategy.series(args.t_max, args.dt)
    table = ResultTable.from_rows(rows, strategy.series_columns)
    _emit(table.to_csv(), args.out, outputs)
    return EXIT_OK


def run_simulate(
    args: argparse.Namespace,
    defaults: ExperimentDefaults,
    outputs: List[Path],
    run_logger: RunLogger,
) -> int:
    strategy = StrategyName(args.strategy)
    speed = defaults.touch_run_speed if strategy is StrategyName.TOUCHRUN else defaults.lane_speed
    p = _params(args, speed)
    if strategy is StrategyName.TOUCHRUN and args.k is None:
        raise DomainError("touch-and-run runs need --k", precondition="--k given")
    cfg = SimConfig(
        strategy=strategy,
        params=p,
        n_robots=args.n,
        dt=args.dt,
        theta=_angle(args.theta, args, math.pi / 6) if strategy is StrategyName.HEX else None,
        K=args.k if strategy is StrategyName.TOUCHRUN else None,
        audit=not args.no_audit,
        trace=args.trace is not None,
    )
    world = simulate(cfg, run_logger)
    series = throughput_from_arrivals(world.arrival_times())
    _emit(series.to_csv(), args.out, outputs)
    if args.trace is not None:
        rows = [
            {"t": t, "robot_id": robot, "x": x, "y": y, "phase": phase}
            for t, robot, x, y, phase in world.trace
        ]
        table = ResultTable.from_rows(rows, ["t", "robot_id", "x", "y", "phase"])
        outputs.append(table.write(args.trace))
    print(
        f"robots={world.bundle.size} final_f={series.final.f} "
        f"min_distance={world.min_distance:.6f}",
        file=sys.stderr,
    )
    return EXIT_OK


def run_compare(args: argparse.Namespace, outputs: List[Path]) -> int:
    u_values = comparison.u_grid(args.u_min, args.u_max, args.points)
    points = comparison.sweep(
        u_values, args.t, v=args.v, d=args.d, theta_samples=args.theta_samples, jobs=args.jobs
    )
    table = ResultTable.from_rows(
        [point.to_row() for point in points],
        ["u", "f_p", "f_h_min", "f_h_max", "f_h_T", "f_t_T", "f_t_asym"],
    )
    _emit(table.to_csv(), args.out, outputs)
    return EXIT_OK


def run_oracle_check(args: argparse.Namespace, run_logger: RunLogger) -> int:
    cases = hex_oracle.random_cases(args.samples, args.seed, t_max=args.t_max)
    mismatches = hex_oracle.verify(cases, jobs=args.jobs)
    if not mismatches:
        print(f"{len(cases)}/{len(cases)} OK")
        return EXIT_OK
    first = mismatches[0]
    run_logger.log_oracle_mismatch(first, first["closed_form"], first["oracle"])
    print(f"{len(cases) - len(mismatches)}/{len(cases)} OK")
    print(f"first counterexample: {json.dumps(first, sort_keys=True)}")
    return EXIT_FAILURE


def run_figures(args: argparse.Namespace, outputs: List[Path]) -> int:
    scale = figures.SCALES["quick" if args.quick else "full"]
    names = sorted(figures.FIGURES) if args.fig == "all" else [args.fig]
    print("=" * 60, file=sys.stderr)
    print("Swarm Throughput Lab - figure data", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    print(f"Figures: {', '.join(names)}", file=sys.stderr)
    print(f"Scale: {scale.name}", file=sys.stderr)
    print(f"Jobs: {args.jobs}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    for name in names:
        written = figures.write_figure(name, args.out_dir, scale, args.jobs)
        outputs.extend(written)
        for path in written:
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def run_replay(args: argparse.Namespace) -> int:
    manifest = RunManifest.load(args.manifest)
    code = main(manifest.argv)
    if code != EXIT_OK:
        return code
    changed = manifest.changed_outputs()
    if changed:
        for path in changed:
            print(f"differs: {path}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"reproduced {len(manifest.outputs)} outputs")
    return EXIT_OK


def _manifest_target(args: argparse.Namespace) -> Optional[Path]:
    if args.command == "figures":
        return manifest_path(args.out_dir)
    out = getattr(args, "out", None)
    return manifest_path(out) if out is not None else None


def _write_manifest(
    args: argparse.Namespace, argv: List[str], outputs: List[Path], duration: float
) -> Optional[Path]:
    target = _manifest_target(args)
    if target is None or not outputs:
        return None
    parameters = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()}
    manifest = RunManifest(
        command=args.command, argv=argv, parameters=parameters, duration_s=duration
    )
    for path in outputs:
        manifest.add_output(path)
    return manifest.write(target)


def dispatch(args: argparse.Namespace, defaults: ExperimentDefaults, argv: List[str]) -> int:
    run_logger = RunLogger(args.command)
    parameters = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()}
    run_logger.log_run_started(parameters)
    started = time.perf_counter()
    outputs: List[Path] = []

    handlers: Dict[str, Callable[[], int]] = {
        "throughput": lambda: run_throughput(args, defaults, outputs),
        "simulate": lambda: run_simulate(args, defaults, outputs, run_logger),
        "compare": lambda: run_compare(args, outputs),
        "oracle-check": lambda: run_oracle_check(args, run_logger),
        "figures": lambda: run_figures(args, outputs),
        "replay": lambda: run_replay(args),
    }
    try:
        code = handlers[args.command]()
    except DomainError as e:
        run_logger.log_domain_error(e.precondition)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except ValidationError as e:
        print(f"Error: invalid parameters: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except SimulationError as e:
        print(f"Error: {e} {json.dumps(e.diagnostic, sort_keys=True)}", file=sys.stderr)
        return EXIT_FAILURE
    except ThroughputLabError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILURE

    duration = time.perf_counter() - started
    if args.command != "replay":
        manifest = _write_manifest(args, argv, outputs, duration)
        if manifest is not None:
            outputs.append(manifest)
    run_logger.log_run_completed(duration, [str(path) for path in outputs])
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    argv = list(sys.argv[1:] if argv is None else argv)
    settings, defaults = load_config()
    parser = create_parser(settings, defaults)
    args = parser.parse_args(argv)

    setup_logging(args.log_level, str(args.log_file) if args.log_file else None)

    if args.jobs < 1:
        parser.error("--jobs must be >= 1")

    return dispatch(args, defaults, argv)


if __name__ == "__main__":
    sys.exit(main())
