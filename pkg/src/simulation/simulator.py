"""
Kinematic Simulator
Replays a strategy at constant speed and logs when each robot first comes
within s of the target centre.

Positions are sampled every dt seconds at t = k * dt. An arrival is recorded
at the first sample whose preceding interval contains the robot's closest
approach, so logged times are the exact arrival times rounded up to the grid.
A pairwise distance audit runs at every sample.
"""

from enum import Enum
from typing import Any, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.base_strategy import BaseStrategy
from ..core.errors import DomainError, SimulationError
from ..core.logging_config import RunLogger
from ..core.model import SwarmParams, ThroughputSeries, throughput_from_arrivals
from ..core.rounding import round13
from ..core.settings import get_defaults
from ..strategies import compact_lanes
from ..strategies.compact_lanes import CompactLanesStrategy
from ..strategies.hex_packing import HexPackingStrategy
from ..strategies.parallel_lanes import ParallelLanesStrategy
from ..strategies.touch_run import TouchRunStrategy
from . import layouts
from .paths import PHASES, Phase, PathBundle, TouchRunBundle

logger = structlog.get_logger(__name__)

GUARD_FACTOR = 10


class StrategyName(str, Enum):
    COMPACT = "compact"
    PARALLEL = "parallel"
    HEX = "hex"
    TOUCHRUN = "touchrun"


class SimConfig(BaseModel):
    """One simulated run."""

    model_config = ConfigDict(frozen=True)

    strategy: StrategyName
    params: SwarmParams
    n_robots: int = Field(default=200, ge=2)
    dt: float = Field(default=0.1, gt=0, description="Sampling step (s)")
    theta: Optional[float] = Field(default=None, description="Packing angle for hex (rad)")
    K: Optional[int] = Field(default=None, ge=3, description="Lane count for touch and run")
    exit_gain: float = Field(default=1.0, gt=0)
    audit: bool = True
    trace: bool = False

    @model_validator(mode="after")
    def _strategy_arguments(self) -> "SimConfig":
        if self.strategy is StrategyName.HEX and self.theta is None:
            raise ValueError("hex runs need theta")
        if self.strategy is StrategyName.TOUCHRUN and self.K is None:
            raise ValueError("touch-and-run runs need K")
        return self

    @classmethod
    def with_default_speed(
        cls, strategy: StrategyName, s: float, d: Optional[float] = None, **kwargs: Any
    ) -> "SimConfig":
        """Config at the configured experiment speed for the strategy."""
        defaults = get_defaults()
        v = defaults.touch_run_speed if strategy is StrategyName.TOUCHRUN else defaults.lane_speed
        params = SwarmParams(v=v, d=d if d is not None else defaults.d, s=s)
        kwargs.setdefault("n_robots", defaults.n_robots)
        kwargs.setdefault("dt", defaults.dt)
        return cls(strategy=strategy, params=params, **kwargs)


class RobotState(BaseModel):
    """Snapshot of one robot."""

    robot_id: int
    lane: int
    x: float
    y: float
    heading: float
    phase: Phase
    arrived_at: Optional[float] = None


def build_bundle(cfg: SimConfig) -> PathBundle:
    p, n = cfg.params, cfg.n_robots
    if cfg.strategy is StrategyName.COMPACT:
        bundle: PathBundle = layouts.compact_bundle(p, n)
    elif cfg.strategy is StrategyName.PARALLEL:
        bundle = layouts.parallel_bundle(p, n)
    elif cfg.strategy is StrategyName.HEX:
        assert cfg.theta is not None
        bundle = layouts.hex_bundle(p, cfg.theta, n, cfg.dt)
    else:
        assert cfg.K is not None
        bundle = layouts.touch_run_bundle(p, cfg.K, n, cfg.exit_gain)
    return layouts.populate(bundle, n, cfg.dt)


def analytic_strategy(cfg: SimConfig) -> BaseStrategy:
    if cfg.strategy is StrategyName.COMPACT:
        return CompactLanesStrategy(cfg.params)
    if cfg.strategy is StrategyName.PARALLEL:
        return ParallelLanesStrategy(cfg.params)
    if cfg.strategy is StrategyName.HEX:
        assert cfg.theta is not None
        return HexPackingStrategy(cfg.params, cfg.theta)
    assert cfg.K is not None
    return TouchRunStrategy(cfg.params, cfg.K)


def _spacing(cfg: SimConfig, bundle: PathBundle) -> float:
    if isinstance(bundle, TouchRunBundle):
        return max(cfg.params.d, bundle.cfg.d_o)
    if cfg.strategy is StrategyName.COMPACT:
        return compact_lanes.layout(cfg.params).d_e
    return cfg.params.d


class SimWorld:
    """Mutable state of one run: the robots, the sample index and the arrival log."""

    def __init__(
        self, config: SimConfig, bundle: PathBundle, run_logger: Optional[RunLogger] = None
    ):
        self.config = config
        self.bundle = bundle
        self.run_logger = run_logger
        self.step_index = 0
        self.arrived_step = np.full(bundle.size, -1, dtype=np.int64)
        self.min_distance = float("inf")
        self.trace: List[Tuple[float, int, float, float, str]] = []
        self.time_limit = (
            GUARD_FACTOR * config.n_robots * _spacing(config, bundle) / config.params.v
        )
        self._observe(0.0, 0.0)

    @classmethod
    def create(cls, config: SimConfig, run_logger: Optional[RunLogger] = None) -> "SimWorld":
        return cls(config, build_bundle(config), run_logger)

    @property
    def time(self) -> float:
        return self.step_index * self.config.dt

    @property
    def done(self) -> bool:
        return bool((self.arrived_step >= 0).all())

    def _observe(self, t_prev: float, t_now: float) -> None:
        pending = self.arrived_step < 0
        if self.config.audit:
            audited = (
                np.ones(self.bundle.size, dtype=bool)
                if isinstance(self.bundle, TouchRunBundle)
                else pending
            )
            audit(self, audited)
        hit = pending & self.bundle.reached(t_prev, t_now)
        self.arrived_step[hit] = self.step_index
        if self.config.trace:
            for robot, (x, y) in enumerate(self.bundle.positions()):
                phase = PHASES[self.bundle.phase[robot]].value
                self.trace.append((t_now, robot, float(x), float(y), phase))

    def robots(self) -> List[RobotState]:
        states = []
        for robot in range(self.bundle.size):
            step_arrived = int(self.arrived_step[robot])
            states.append(
                RobotState(
                    robot_id=robot,
                    lane=int(self.bundle.lanes[robot]),
                    x=float(self.bundle.x[robot]),
                    y=float(self.bundle.y[robot]),
                    heading=float(self.bundle.heading[robot]),
                    phase=PHASES[self.bundle.phase[robot]],
                    arrived_at=None if step_arrived < 0 else step_arrived * self.config.dt,
                )
            )
        return states

    def arrival_times(self) -> List[float]:
        """Sorted arrival times relative to the first arrival, on the dt grid."""
        steps = np.sort(self.arrived_step[self.arrived_step >= 0])
        if steps.size == 0:
            return []
        return [float((k - steps[0]) * self.config.dt) for k in steps]


def audit(world: SimWorld, mask: np.ndarray) -> float:
    """Smallest pairwise distance among masked robots; raises below d - v*dt."""
    points = world.bundle.positions()[mask]
    if len(points) < 2:
        return world.min_distance
    diff = points[:, None, :] - points[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(dist, np.inf)
    closest = float(dist.min())
    world.min_distance = min(world.min_distance, closest)
    p = world.config.params
    floor = p.d - p.v * world.config.dt
    if round13(closest - floor) < 0:
        if world.run_logger is not None:
            world.run_logger.log_audit_violation(world.time, closest)
        logger.error("audit_violation", t=world.time, min_distance=closest)
        raise SimulationError(
            f"robots {closest:.6f} m apart at t={world.time:g}",
            diagnostic={"t": world.time, "min_distance": closest, "limit": floor},
        )
    return closest


def place_initial(cfg: SimConfig) -> List[RobotState]:
    """Robots at t = 0."""
    return SimWorld.create(cfg).robots()


def step(world: SimWorld, dt: Optional[float] = None) -> SimWorld:
    """
    Advance every robot by one sampling step and record new arrivals.

    Samples sit on the grid k * config.dt, so dt, when given, must be that step.
    """
    if dt is None:
        dt = world.config.dt
    elif round13(dt - world.config.dt) != 0:
        raise DomainError(
            f"step dt={dt:g} differs from the run grid dt={world.config.dt:g}",
            precondition="dt == config.dt",
        )
    t_prev = world.time
    world.step_index += 1
    t_now = world.time
    if t_now > world.time_limit:
        pending = int((world.arrived_step < 0).sum())
        raise SimulationError(
            f"run did not finish by t={world.time_limit:g}",
            diagnostic={"t": t_now, "pending": pending, "strategy": world.config.strategy.value},
        )
    world.bundle.advance(t_now, dt)
    world._observe(t_prev, t_now)
    return world


def simulate(cfg: SimConfig, run_logger: Optional[RunLogger] = None) -> SimWorld:
    world = SimWorld.create(cfg, run_logger)
    while not world.done:
        step(world)
    logger.debug(
        "simulation_finished",
        strategy=cfg.strategy.value,
        robots=world.bundle.size,
        steps=world.step_index,
        min_distance=world.min_distance,
    )
    return world


def run(cfg: SimConfig, run_logger: Optional[RunLogger] = None) -> List[float]:
    """Sorted arrival times, first arrival at 0."""
    return simulate(cfg, run_logger).arrival_times()


def run_series(cfg: SimConfig) -> ThroughputSeries:
    return throughput_from_arrivals(run(cfg))


def last_arrival_curve(arrival_times: List[float]) -> List[Tuple[int, float]]:
    """(n, time of the n-th arrival) rows."""
    return [(index, t) for index, t in enumerate(arrival_times, start=1)]


def compare_with_analytic(cfg: SimConfig, series: ThroughputSeries) -> List[dict]:
    """Samples where the measured count differs from the closed-form count."""
    strategy = analytic_strategy(cfg)
    mismatches = []
    for sample in series.samples:
        expected = strategy.count_at(sample.t)
        if expected != sample.n:
            mismatches.append({"t": sample.t, "measured": sample.n, "analytic": expected})
    return mismatches
