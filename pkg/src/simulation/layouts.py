"""
Initial Layouts
Seed robots for each strategy so the first arrival happens at t = 0.

Every builder over-provisions candidates; `select_population` then keeps the
n earliest plus every robot arriving in the same sampling step as the n-th.
"""

import math

import numpy as np
import structlog

from ..analysis.hex_oracle import region_points
from ..core.model import SwarmParams
from ..core.rounding import ceil13, ceil13_array
from ..strategies import compact_lanes, parallel_lanes, touch_run
from ..strategies.hex_packing import HexConfig
from .paths import PathBundle, StraightBundle, TouchRunBundle

logger = structlog.get_logger(__name__)

SEED_GROWTH = 2.0


def select_population(estimates: np.ndarray, n: int, dt: float) -> np.ndarray:
    """Indices of the n earliest robots plus ties at the n-th robot's sampling step."""
    steps = ceil13_array(np.where(np.isfinite(estimates), estimates, 0.0) / dt)
    steps = np.where(np.isfinite(estimates), steps, np.iinfo(np.int64).max)
    order = np.argsort(steps, kind="stable")
    cutoff = steps[order[min(n, steps.size) - 1]]
    return np.flatnonzero(steps <= cutoff)


def compact_bundle(p: SwarmParams, n: int) -> StraightBundle:
    """Top lane y = +s from x = 0, bottom lane y = -s shifted by d_p."""
    lanes = compact_lanes.layout(p)
    k = np.arange(n, dtype=float)
    x = np.concatenate((k * lanes.d_e, lanes.d_p + k * lanes.d_e))
    y = np.concatenate((np.full(n, p.s), np.full(n, -p.s)))
    lane_ids = np.repeat([0, 1], n)
    return StraightBundle(x, y, lane_ids, p.v, p.s)


def parallel_bundle(p: SwarmParams, n: int) -> StraightBundle:
    """Lane i at height s - (i-1)d, shifted so lane J reaches the circle at t = 0."""
    lanes = parallel_lanes.layout(p)
    k = np.arange(n, dtype=float)
    xs, ys, ids = [], [], []
    for i in range(1, lanes.lanes + 1):
        y = lanes.lane_height(i, p)
        reach = math.sqrt(max(p.s**2 - y**2, 0.0))
        delay = lanes.d_extra[i - 1] - lanes.d_first
        xs.append(reach + delay + k * p.d)
        ys.append(np.full(n, y))
        ids.append(np.full(n, i - 1))
    return StraightBundle(np.concatenate(xs), np.concatenate(ys), np.concatenate(ids), p.v, p.s)


def hex_bundle(p: SwarmParams, theta: float, n: int, dt: float) -> StraightBundle:
    """Lattice robots anchored at (s, 0); only robots that ever reach the target are kept."""
    HexConfig(theta=theta)
    horizon = (n * math.sqrt(3) * p.d**2 / (4 * p.s) + 2 * p.s) / p.v
    X, Y = region_points(horizon, theta, p)
    while X.size < n:
        horizon *= SEED_GROWTH
        X, Y = region_points(horizon, theta, p)
    # widen to the step of the n-th arrival so ties are all present
    bundle = StraightBundle(X, Y, np.zeros(X.size, dtype=int), p.v, p.s)
    estimates = np.sort(bundle.arrival_estimates())
    cutoff = (ceil13(estimates[n - 1] / dt) + 1) * dt
    if cutoff > horizon:
        X, Y = region_points(cutoff, theta, p)
    logger.debug("hex_seeded", candidates=int(X.size), horizon=max(horizon, cutoff))
    return StraightBundle(X, Y, np.zeros(X.size, dtype=int), p.v, p.s)


def touch_run_bundle(p: SwarmParams, K: int, n: int, gain: float = 1.0) -> TouchRunBundle:
    """K lanes, robot j of every lane starting j * d_o before its tangent point."""
    cfg = touch_run.build_config(K, p)
    geometry = [touch_run.lane_geometry(cfg, lane, p) for lane in range(K)]
    waves = math.ceil(n / K) + 1
    lanes = np.tile(np.arange(K), waves)
    sigma_start = -np.repeat(np.arange(waves, dtype=float), K) * cfg.d_o
    return TouchRunBundle(cfg, geometry, lanes, sigma_start, p.v, p.s, gain)


def populate(bundle: PathBundle, n: int, dt: float) -> PathBundle:
    keep = select_population(bundle.arrival_estimates(), n, dt)
    return bundle.select(keep)
