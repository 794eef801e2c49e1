"""
Strategy Comparison
Compares parallel lanes, hexagonal packing and touch and run as functions of
the dimensionless target size u = s/d.

Includes the parallel-vs-hex crossover, the packing-angle search, the
touch-and-run envelope f_t(u), the u sweeps behind the comparison figures and
the simulated hex-vs-parallel runs.
"""

import math
from functools import partial
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import DomainError
from ..core.model import SwarmParams
from ..core.rounding import floor13
from ..core.validation import get_validator, require
from ..core.worker_pool import run_ordered
from ..strategies import hex_packing, parallel_lanes, touch_run
from ..strategies.touch_run import MIN_LANES

logger = structlog.get_logger(__name__)

SQRT3 = math.sqrt(3)
INV_SQRT3 = 1 / SQRT3


class StrategyCurvePoint(BaseModel):
    """One u sample of the comparison sweep; None where a strategy is undefined."""

    model_config = ConfigDict(frozen=True)

    u: float = Field(ge=0)
    f_p: Optional[float] = None
    f_h_min: Optional[float] = None
    f_h_max: Optional[float] = None
    f_h_at_T: Optional[float] = None
    theta_star: Optional[float] = None
    f_t_at_T: Optional[float] = None
    f_t_asym: Optional[float] = None
    K_star: Optional[int] = None

    def to_row(self) -> dict:
        return {
            "u": self.u,
            "f_p": self.f_p,
            "f_h_min": self.f_h_min,
            "f_h_max": self.f_h_max,
            "f_h_T": self.f_h_at_T,
            "f_t_T": self.f_t_at_T,
            "f_t_asym": self.f_t_asym,
        }


class ThetaSearchResult(BaseModel):
    """Best packing angle together with every candidate evaluated."""

    model_config = ConfigDict(frozen=True)

    theta: float
    f: float
    candidates: List[Tuple[float, float]]


class HexParallelRow(BaseModel):
    """Final simulated throughput of hex (theta = pi/6) and parallel lanes for one (s, v)."""

    model_config = ConfigDict(frozen=True)

    s: float
    v: float
    n_robots: int
    f_hex: float
    f_parallel: float
    f_hex_high: float
    f_parallel_limit: float


def crossover_u() -> float:
    """u above which parallel lanes never beat the worst hexagonal packing."""
    return (SQRT3 + 2) / (4 - 2 * SQRT3)


def f_p(u: float, v: float = 1.0, d: float = 1.0) -> float:
    if u < 0.5:
        raise DomainError("parallel lanes need u >= 1/2", precondition="u >= 1/2")
    return floor13(2 * u + 1) * v / d


def f_h_min(u: float, v: float = 1.0, d: float = 1.0) -> float:
    """Lower limit of hex throughput, reached at theta = pi/6."""
    return (2 / SQRT3) * (2 * u - 1) * v / d


def f_h_max(u: float, v: float = 1.0, d: float = 1.0) -> float:
    return (2 / SQRT3) * (2 * u + 1) * v / d


def _theta_pool(n_samples: int, paired: bool) -> List[float]:
    pool = set(hex_packing.theta_grid(n_samples))
    if paired:
        pool.update(hex_packing.theta_grid(n_samples + 1))
    pool.add(math.pi / 6)
    return sorted(pool)


def best_theta(
    T: float, p: SwarmParams, n_samples: int, paired: bool = True
) -> ThetaSearchResult:
    """
    Grid search for the packing angle maximising f_h(T, theta).

    The pool is the n_samples grid, the n_samples + 1 grid when paired, and
    pi/6. Ties go to the smaller angle.
    """
    require(get_validator().validate_horizon(T))
    if n_samples < 2:
        raise DomainError("need at least two angle samples", precondition="n_samples >= 2")
    candidates = [
        (theta, hex_packing.throughput_at(T, hex_packing.HexConfig(theta=theta), p))
        for theta in _theta_pool(n_samples, paired)
    ]
    best_theta_value, best_f = candidates[0]
    for theta, f in candidates[1:]:
        if f > best_f:
            best_theta_value, best_f = theta, f
    return ThetaSearchResult(theta=best_theta_value, f=best_f, candidates=candidates)


def lane_count_limit(u: float) -> int:
    require(_touch_run_check(u))
    return floor13(math.pi / math.asin(1 / (2 * u)))


def _touch_run_check(u: float) -> Tuple[bool, Optional[str]]:
    return get_validator().validate_touch_run(SwarmParams(d=1.0, s=u))


def normalized_spacing(u: float, K: int) -> float:
    """d_o / d for lane count K, from the layout touch and run builds at d = 1."""
    return touch_run.build_config(K, SwarmParams(d=1.0, s=u)).d_o


def f_t_of_u(
    u: float, T: Optional[float] = None, v: float = 1.0, d: float = 1.0
) -> Tuple[int, float]:
    """
    Touch-and-run envelope: the best lane count and its throughput.

    With T None the limit K v / d_o is maximised, otherwise the throughput
    after T seconds. Ties go to the smaller K. Lane counts without a positive
    turning radius are skipped, so no layout exists at u = 1/sqrt(3).
    """
    k_max = lane_count_limit(u)
    if T is not None:
        require(get_validator().validate_horizon(T))
    best: Optional[Tuple[int, float]] = None
    for K in range(MIN_LANES, k_max + 1):
        try:
            d_o = d * normalized_spacing(u, K)
        except DomainError:
            continue
        if T is None:
            f = K * v / d_o
        else:
            f = (K * floor13(v * T / d_o + 1) - 1) / T
        if best is None or f > best[1]:
            best = (K, f)
    if best is None:
        raise DomainError(
            "no lane count gives a positive turning radius", precondition="r > 0 for some K"
        )
    return best


def u_grid(u_min: float, u_max: float, points: int) -> List[float]:
    """Evenly spaced u values with both endpoints included."""
    if points < 1 or u_max < u_min:
        raise DomainError("empty u range", precondition="u_min <= u_max and points >= 1")
    if points == 1:
        return [u_min]
    return [float(u) for u in np.linspace(u_min, u_max, points)]


def evaluate_point(
    u: float, T: float, v: float = 1.0, d: float = 1.0, theta_samples: int = 1000
) -> StrategyCurvePoint:
    """All strategy curves at one u."""
    fields: dict = {"u": u}
    if u >= 0.5:
        p = SwarmParams(v=v, d=d, s=u * d)
        search = best_theta(T, p, theta_samples)
        fields.update(
            f_p=f_p(u, v, d),
            f_h_min=f_h_min(u, v, d),
            f_h_max=f_h_max(u, v, d),
            f_h_at_T=search.f,
            theta_star=search.theta,
        )
    if _touch_run_check(u)[0]:
        try:
            K_star, f_asym = f_t_of_u(u, None, v, d)
        except DomainError:
            logger.debug("no_touch_run_layout", u=u)
        else:
            fields.update(f_t_asym=f_asym, K_star=K_star, f_t_at_T=f_t_of_u(u, T, v, d)[1])
    return StrategyCurvePoint(**fields)


def sweep(
    u_values: Sequence[float],
    T: float,
    v: float = 1.0,
    d: float = 1.0,
    theta_samples: int = 1000,
    jobs: int = 1,
) -> List[StrategyCurvePoint]:
    """One StrategyCurvePoint per u, in input order."""
    require(get_validator().validate_horizon(T))
    evaluate = partial(evaluate_point, T=T, v=v, d=d, theta_samples=theta_samples)
    points = run_ordered(evaluate, list(u_values), jobs=jobs)
    logger.debug("sweep_finished", points=len(points), T=T, jobs=jobs)
    return points


def limit_curves(u_values: Iterable[float], v: float = 1.0, d: float = 1.0) -> List[dict]:
    """Hex limit bounds and parallel limit over u (no angle search)."""
    rows = []
    for u in u_values:
        if u < 0.5:
            continue
        rows.append(
            {"u": u, "f_p": f_p(u, v, d), "f_h_min": f_h_min(u, v, d), "f_h_max": f_h_max(u, v, d)}
        )
    return rows


def _hex_parallel_row(
    item: Tuple[float, float], n_robots: int, dt: float, d: float
) -> HexParallelRow:
    from ..simulation.simulator import SimConfig, StrategyName, run_series

    s, v = item
    p = SwarmParams(v=v, d=d, s=s)
    hex_run = run_series(
        SimConfig(strategy=StrategyName.HEX, params=p, n_robots=n_robots, dt=dt, theta=math.pi / 6)
    )
    par_run = run_series(
        SimConfig(strategy=StrategyName.PARALLEL, params=p, n_robots=n_robots, dt=dt)
    )
    hex_cfg = hex_packing.HexConfig(theta=math.pi / 6)
    return HexParallelRow(
        s=s,
        v=v,
        n_robots=n_robots,
        f_hex=hex_run.final.f or 0.0,
        f_parallel=par_run.final.f or 0.0,
        f_hex_high=hex_packing.asymptotic_bounds(hex_cfg, p)[1],
        f_parallel_limit=parallel_lanes.asymptotic(p),
    )


def hex_vs_parallel_runs(
    s_values: Optional[Sequence[float]] = None,
    speeds: Sequence[float] = (0.1, 1.0),
    n_robots: int = 200,
    dt: float = 0.1,
    d: float = 1.0,
    jobs: int = 1,
) -> List[HexParallelRow]:
    """
    Simulated hex (theta = pi/6) against parallel lanes for s in 0.50..0.95.

    Targets with s < d/2 are skipped: neither strategy is defined there.
    """
    if s_values is None:
        s_values = [round(0.5 + 0.05 * k, 2) for k in range(10)]
    items = [(s, v) for s in s_values if s >= d / 2 for v in speeds]
    run = partial(_hex_parallel_row, n_robots=n_robots, dt=dt, d=d)
    return run_ordered(run, items, jobs=jobs)
