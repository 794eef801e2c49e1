"""
Figure Data
CSV bundles behind every throughput plot: simulated runs against their closed
forms, hex bounds, touch-and-run lane scans and the u comparisons.

Each builder returns {file stem: ResultTable}. Two scales exist: `full`
uses the experiment sizes (200 robots, T = 10^4, 1000 angle samples); `quick`
shrinks them for smoke runs.
"""

import math
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import DomainError
from ..core.model import SwarmParams, ThroughputSeries
from ..core.output import ResultTable
from ..core.settings import get_defaults
from ..core.worker_pool import run_ordered
from ..simulation.simulator import (
    SimConfig,
    StrategyName,
    analytic_strategy,
    last_arrival_curve,
    run,
    run_series,
)
from ..strategies import hex_packing, touch_run
from ..strategies.point_target import delay_curve
from . import comparison

logger = structlog.get_logger(__name__)

Tables = Dict[str, ResultTable]


class FigureScale(BaseModel):
    """Sizes used by the figure builders."""

    model_config = ConfigDict(frozen=True)

    name: str
    n_robots: int = Field(ge=2)
    horizon: float = Field(gt=0, description="T for the fixed-time comparisons (s)")
    u_points: int = Field(ge=2)
    theta_samples: int = Field(ge=2)
    scan_robots: int = Field(ge=2, description="Robots per run in the lane-count scan")


SCALES = {
    "full": FigureScale(
        name="full", n_robots=200, horizon=1e4, u_points=100, theta_samples=1000, scan_robots=200
    ),
    "quick": FigureScale(
        name="quick", n_robots=40, horizon=200.0, u_points=15, theta_samples=30, scan_robots=30
    ),
}

COMPACT_TARGETS = (0.3, 0.45)
WIDE_TARGETS = (3.0, 6.0)
HEX_ANGLES = (0.0, math.pi / 12, math.pi / 6, 5 * math.pi / 18)
TOUCH_RUNS = ((3.0, 10), (3.0, 16), (6.0, 19), (6.0, 33))
TOUCH_RUN_SPEED = 0.1


def _series_table(cfg: SimConfig, series: ThroughputSeries) -> ResultTable:
    strategy = analytic_strategy(cfg)
    limit = strategy.asymptotic()
    rows = []
    for sample in series.samples:
        analytic = strategy.throughput_at(sample.t) if sample.t > 0 else None
        rows.append(
            {
                "t": sample.t,
                "n": sample.n,
                "f_sim": sample.f,
                "f_analytic": analytic,
                "f_asym": limit,
            }
        )
    return ResultTable.from_rows(rows, ["t", "n", "f_sim", "f_analytic", "f_asym"])


def _simulated(cfg: SimConfig) -> Tuple[SimConfig, ThroughputSeries]:
    return cfg, run_series(cfg)


def _simulated_tables(configs: Dict[str, SimConfig], jobs: int) -> Tables:
    results = run_ordered(_simulated, list(configs.values()), jobs=jobs)
    return {stem: _series_table(cfg, series) for stem, (cfg, series) in zip(configs, results)}


def results1qw(scale: FigureScale, jobs: int) -> Tables:
    """Compact lanes, s = 0.3 and 0.45."""
    configs = {
        f"results1qw_s{s}": SimConfig(
            strategy=StrategyName.COMPACT, params=SwarmParams(v=1.0, d=1.0, s=s), n_robots=25
        )
        for s in COMPACT_TARGETS
    }
    return _simulated_tables(configs, jobs)


def tppar(scale: FigureScale, jobs: int) -> Tables:
    configs = {
        f"tppar_s{s:g}": SimConfig(
            strategy=StrategyName.PARALLEL,
            params=SwarmParams(v=1.0, d=1.0, s=s),
            n_robots=scale.n_robots,
        )
        for s in WIDE_TARGETS
    }
    return _simulated_tables(configs, jobs)


def _horizons(t_max: float) -> List[float]:
    values = []
    decade = 1.0
    while decade <= t_max:
        values.extend(t for t in (decade, 2 * decade, 5 * decade) if t <= t_max)
        decade *= 10
    return values


def tphex(scale: FigureScale, jobs: int) -> Tables:
    """f_h(T, theta) converging into its bounds."""
    rows = []
    for s in WIDE_TARGETS:
        p = SwarmParams(v=1.0, d=1.0, s=s)
        upper = hex_packing.upper_bound_asymptotic(p)
        for theta in HEX_ANGLES:
            cfg = hex_packing.HexConfig(theta=theta)
            low, high = hex_packing.asymptotic_bounds(cfg, p)
            for T in _horizons(scale.horizon):
                rows.append(
                    {
                        "s": s,
                        "theta": theta,
                        "T": T,
                        "f": hex_packing.throughput_at(T, cfg, p),
                        "f_low": low,
                        "f_high": high,
                        "f_upper": upper,
                    }
                )
    return {"tphex": ResultTable.from_rows(rows)}


def tpit(scale: FigureScale, jobs: int) -> Tables:
    """Touch-and-run runs against K v / d_o."""
    configs = {
        f"tpit_s{s:g}_k{K}": SimConfig(
            strategy=StrategyName.TOUCHRUN,
            params=SwarmParams(v=TOUCH_RUN_SPEED, d=1.0, s=s),
            n_robots=scale.n_robots,
            K=K,
        )
        for s, K in TOUCH_RUNS
    }
    return _simulated_tables(configs, jobs)


def _final_throughput(cfg: SimConfig) -> float:
    return run_series(cfg).final.f or 0.0


def ksit(scale: FigureScale, jobs: int) -> Tables:
    """Limit and simulated throughput for every feasible lane count."""
    tables: Tables = {}
    for s in WIDE_TARGETS:
        p = SwarmParams(v=TOUCH_RUN_SPEED, d=1.0, s=s)
        rows = touch_run.scan_k(p, get_defaults().omega_max)
        feasible = [K for K, _, ok in rows if ok]
        configs = [
            SimConfig(strategy=StrategyName.TOUCHRUN, params=p, n_robots=scale.scan_robots, K=K)
            for K in feasible
        ]
        measured = dict(zip(feasible, run_ordered(_final_throughput, configs, jobs=jobs)))
        tables[f"ksit_s{s:g}"] = ResultTable.from_rows(
            [
                {"K": K, "f_asym": f, "feasible": ok, "f_sim": measured.get(K)}
                for K, f, ok in rows
            ]
        )
    return tables


def _sweep_table(u_values: List[float], scale: FigureScale, jobs: int) -> ResultTable:
    points = comparison.sweep(
        u_values, scale.horizon, theta_samples=scale.theta_samples, jobs=jobs
    )
    return ResultTable.from_rows(
        [point.to_row() for point in points],
        ["u", "f_p", "f_h_min", "f_h_max", "f_h_T", "f_t_T", "f_t_asym"],
    )


def fhfp_large(scale: FigureScale, jobs: int) -> Tables:
    return {"fhfpLarge": _sweep_table(comparison.u_grid(0.0, 7.0, scale.u_points), scale, jobs)}


def fhfp_zoom(scale: FigureScale, jobs: int) -> Tables:
    return {"fhfpZoom": _sweep_table(comparison.u_grid(0.5, 1.0, scale.u_points), scale, jobs)}


def ftbelowfh(scale: FigureScale, jobs: int) -> Tables:
    u_min = comparison.INV_SQRT3
    return {"ftbelowfh": _sweep_table(comparison.u_grid(u_min, 7.0, scale.u_points), scale, jobs)}


def _touch_run_envelope(u: float) -> Optional[Tuple[int, float]]:
    try:
        return comparison.f_t_of_u(u)
    except DomainError:
        return None


def _envelope_row(u: float) -> Optional[dict]:
    envelope = _touch_run_envelope(u)
    if envelope is None:
        return None
    K, f_t = envelope
    f_h = comparison.f_h_max(u)
    return {"u": u, "K": K, "f_t": f_t, "f_h_max": f_h, "higher": f_t > f_h}


def numhigherftfh(scale: FigureScale, jobs: int) -> Tables:
    """Where the touch-and-run envelope beats the hex ceiling, u up to 1000."""
    points = 10 * scale.u_points
    u_values = [float(u) for u in np.geomspace(comparison.INV_SQRT3, 1000.0, points)]
    rows = run_ordered(_envelope_row, u_values, jobs=jobs)
    return {"numhigherftfh": ResultTable.from_rows([row for row in rows if row is not None])}


def graf_k_throughput(scale: FigureScale, jobs: int) -> Tables:
    """Best lane count and its limit throughput against u."""
    u_values = comparison.u_grid(comparison.INV_SQRT3, 20.0, scale.u_points)
    envelopes = run_ordered(_touch_run_envelope, u_values, jobs=jobs)
    rows = [
        {"u": u, "K": envelope[0], "f_t": envelope[1]}
        for u, envelope in zip(u_values, envelopes)
        if envelope is not None
    ]
    return {"grafKthroughput": ResultTable.from_rows(rows)}


def limitshexpack(scale: FigureScale, jobs: int) -> Tables:
    rows = comparison.limit_curves(comparison.u_grid(0.5, 10.0, scale.u_points))
    return {"limitshexpack": ResultTable.from_rows(rows)}


def timehex(scale: FigureScale, jobs: int) -> Tables:
    """Time of the n-th arrival for a hex swarm at theta = pi/6."""
    tables: Tables = {}
    for s in WIDE_TARGETS:
        cfg = SimConfig(
            strategy=StrategyName.HEX,
            params=SwarmParams(v=1.0, d=1.0, s=s),
            n_robots=scale.n_robots,
            theta=math.pi / 6,
        )
        rows = [{"n": n, "t": t} for n, t in last_arrival_curve(run(cfg))]
        tables[f"timehex_s{s:g}"] = ResultTable.from_rows(rows, ["n", "t"])
    return tables


def thetaprofile(scale: FigureScale, jobs: int) -> Tables:
    tables: Tables = {}
    for s in WIDE_TARGETS:
        p = SwarmParams(v=1.0, d=1.0, s=s)
        profile = hex_packing.theta_profile(scale.horizon, p, scale.theta_samples)
        tables[f"thetaprofile_s{s:g}"] = ResultTable.from_rows(
            [{"theta": theta, "f": f} for theta, f in profile]
        )
    return tables


def comphexpar(scale: FigureScale, jobs: int) -> Tables:
    rows = comparison.hex_vs_parallel_runs(n_robots=scale.n_robots, jobs=jobs)
    return {"comphexpar": ResultTable.from_rows([row.model_dump() for row in rows])}


def pointdelay(scale: FigureScale, jobs: int) -> Tables:
    curve = delay_curve(scale.theta_samples, theta_max=2 * math.pi / 3)
    return {"pointdelay": ResultTable.from_rows([{"theta": t, "delay_ratio": r} for t, r in curve])}


FIGURES: Dict[str, Callable[[FigureScale, int], Tables]] = {
    "results1qw": results1qw,
    "tppar": tppar,
    "tphex": tphex,
    "tpit": tpit,
    "ksit": ksit,
    "fhfpLarge": fhfp_large,
    "fhfpZoom": fhfp_zoom,
    "numhigherftfh": numhigherftfh,
    "ftbelowfh": ftbelowfh,
    "grafKthroughput": graf_k_throughput,
    "limitshexpack": limitshexpack,
    "timehex": timehex,
    "thetaprofile": thetaprofile,
    "comphexpar": comphexpar,
    "pointdelay": pointdelay,
}


def build_figure(name: str, scale: FigureScale, jobs: int = 1) -> Tables:
    if name not in FIGURES:
        raise KeyError(f"unknown figure {name!r}")
    logger.info("figure_started", figure=name, scale=scale.name)
    return FIGURES[name](scale, jobs)


def write_figure(name: str, out_dir: Path, scale: FigureScale, jobs: int = 1) -> List[Path]:
    """Write one CSV per table of the figure; returns the paths in table order."""
    tables = build_figure(name, scale, jobs)
    return [table.write(Path(out_dir) / f"{stem}.csv") for stem, table in tables.items()]


__all__ = ["FIGURES", "SCALES", "FigureScale", "build_figure", "write_figure"]
