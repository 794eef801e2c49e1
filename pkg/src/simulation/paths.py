"""
Path Bundles
Constant-speed trajectories for groups of robots, advanced in lock step.

Each bundle knows where its robots are at time t and which of them came
within s of the target centre (the origin) during the last sampling
interval. The swept test catches robots whose closest approach falls between
two samples.
"""

import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import List, Tuple

import numpy as np

from ..core.rounding import round13_array
from ..strategies.touch_run import LaneGeometry, TouchRunConfig


class Phase(str, Enum):
    STRAIGHT = "straight"
    ENTRY = "entry"
    ARC = "arc"
    EXIT = "exit"


PHASES = [Phase.STRAIGHT, Phase.ENTRY, Phase.ARC, Phase.EXIT]
STRAIGHT, ENTRY, ARC, EXIT = range(4)


def wrap_angle(angle: np.ndarray) -> np.ndarray:
    """Map angles to [-pi, pi)."""
    return (np.asarray(angle) + math.pi) % (2 * math.pi) - math.pi


class PathBundle(ABC):
    """Robots sharing one kind of path."""

    def __init__(self, lanes: np.ndarray, v: float, s: float):
        self.lanes = np.asarray(lanes, dtype=int)
        self.v = v
        self.s = s
        n = self.lanes.size
        self.x = np.zeros(n)
        self.y = np.zeros(n)
        self.heading = np.zeros(n)
        self.phase = np.full(n, STRAIGHT, dtype=int)

    @property
    def size(self) -> int:
        return int(self.lanes.size)

    def positions(self) -> np.ndarray:
        return np.column_stack((self.x, self.y))

    @abstractmethod
    def arrival_estimates(self) -> np.ndarray:
        """Exact (unsampled) arrival time of every robot, seconds from t = 0."""

    @abstractmethod
    def advance(self, t_now: float, dt: float) -> None:
        """Move every robot to its position at t_now."""

    @abstractmethod
    def reached(self, t_prev: float, t_now: float) -> np.ndarray:
        """Mask of robots whose closest approach over [t_prev, t_now] is within s."""

    @abstractmethod
    def select(self, keep: np.ndarray) -> "PathBundle":
        """Bundle restricted to the robots in `keep` (index array)."""


class StraightBundle(PathBundle):
    """Robots moving along -x on horizontal lines y = const."""

    def __init__(self, x_start: np.ndarray, y: np.ndarray, lanes: np.ndarray, v: float, s: float):
        super().__init__(lanes, v, s)
        self.x_start = np.asarray(x_start, dtype=float)
        self.y_line = np.asarray(y, dtype=float)
        self.advance(0.0, 0.0)

    def arrival_estimates(self) -> np.ndarray:
        reach = np.sqrt(np.maximum(self.s**2 - self.y_line**2, 0.0))
        travel = self.x_start - reach
        outside = round13_array(np.abs(self.y_line) - self.s) > 0
        return np.where(outside, np.inf, travel / self.v)

    def advance(self, t_now: float, dt: float) -> None:
        self.x = self.x_start - self.v * t_now
        self.y = self.y_line.copy()
        self.heading = np.full(self.size, math.pi)

    def reached(self, t_prev: float, t_now: float) -> np.ndarray:
        x_prev = self.x_start - self.v * t_prev
        x_now = self.x_start - self.v * t_now
        nearest = np.minimum(np.maximum(x_now, 0.0), x_prev)
        closest = np.hypot(nearest, self.y_line)
        return round13_array(closest - self.s) <= 0

    def select(self, keep: np.ndarray) -> "StraightBundle":
        return StraightBundle(
            self.x_start[keep], self.y_line[keep], self.lanes[keep], self.v, self.s
        )


class TouchRunBundle(PathBundle):
    """
    Robots on touch-and-run lanes.

    sigma is the arc length from a robot's tangent point: negative on the way
    in, zero where the path grazes the target circle. Entry and arc are
    closed-form; on the exit line the heading is integrated with the
    correction -gain * (heading - beta) per second.
    """

    def __init__(
        self,
        cfg: TouchRunConfig,
        geometry: List[LaneGeometry],
        lanes: np.ndarray,
        sigma_start: np.ndarray,
        v: float,
        s: float,
        gain: float = 1.0,
    ):
        super().__init__(lanes, v, s)
        self.cfg = cfg
        self.geometry = geometry
        self.sigma_start = np.asarray(sigma_start, dtype=float)
        self.gain = gain
        self.half_arc = cfg.r * (math.pi - cfg.alpha) / 2

        g = [geometry[lane] for lane in self.lanes]
        self._start = np.array([lane.turn_start for lane in g]).reshape(-1, 2)
        self._end = np.array([lane.turn_end for lane in g]).reshape(-1, 2)
        self._centre = np.array([lane.arc_centre for lane in g]).reshape(-1, 2)
        self._arc_start = np.array([lane.arc_start_angle for lane in g])
        self._entry_heading = np.array([lane.entry_heading for lane in g])
        self._beta = np.array([lane.exit_heading for lane in g])
        self.phase = np.full(self.size, ENTRY, dtype=int)
        self.advance(0.0, 0.0)

    def sigma(self, t: float) -> np.ndarray:
        return self.sigma_start + self.v * t

    def arrival_estimates(self) -> np.ndarray:
        return -self.sigma_start / self.v

    def advance(self, t_now: float, dt: float) -> None:
        sigma = self.sigma(t_now)
        entry = sigma < -self.half_arc
        exiting = sigma > self.half_arc
        arc = ~entry & ~exiting
        was_exit = self.phase == EXIT

        x, y, heading = self.x.copy(), self.y.copy(), self.heading.copy()

        back = -self.half_arc - sigma[entry]
        x[entry] = self._start[entry, 0] - back * np.cos(self._entry_heading[entry])
        y[entry] = self._start[entry, 1] - back * np.sin(self._entry_heading[entry])
        heading[entry] = self._entry_heading[entry]

        angle = self._arc_start[arc] + (sigma[arc] + self.half_arc) / self.cfg.r
        x[arc] = self._centre[arc, 0] + self.cfg.r * np.cos(angle)
        y[arc] = self._centre[arc, 1] + self.cfg.r * np.sin(angle)
        heading[arc] = angle + math.pi / 2

        fresh = exiting & ~was_exit
        ahead = sigma[fresh] - self.half_arc
        beta = self._beta[fresh]
        x[fresh] = self._end[fresh, 0] + ahead * np.cos(beta)
        y[fresh] = self._end[fresh, 1] + ahead * np.sin(beta)
        heading[fresh] = beta

        steady = exiting & was_exit
        if steady.any():
            error = wrap_angle(heading[steady] - self._beta[steady])
            heading[steady] = heading[steady] - self.gain * error * dt
            x[steady] = x[steady] + self.v * dt * np.cos(heading[steady])
            y[steady] = y[steady] + self.v * dt * np.sin(heading[steady])

        self.x, self.y, self.heading = x, y, heading
        self.phase = np.select([entry, arc], [ENTRY, ARC], default=EXIT)

    def reached(self, t_prev: float, t_now: float) -> np.ndarray:
        # the closest approach is the tangent point at sigma = 0
        before = round13_array(self.sigma(t_prev)) <= 0
        after = round13_array(self.sigma(t_now)) >= 0
        return before & after

    def select(self, keep: np.ndarray) -> "TouchRunBundle":
        return TouchRunBundle(
            self.cfg,
            self.geometry,
            self.lanes[keep],
            self.sigma_start[keep],
            self.v,
            self.s,
            self.gain,
        )


def lane_point(cfg: TouchRunConfig, lane: LaneGeometry, sigma: float) -> Tuple[float, float]:
    """Closed-form position at arc length sigma from the tangent point."""
    half_arc = cfg.r * (math.pi - cfg.alpha) / 2
    if sigma < -half_arc:
        back = -half_arc - sigma
        return (
            lane.turn_start[0] - back * math.cos(lane.entry_heading),
            lane.turn_start[1] - back * math.sin(lane.entry_heading),
        )
    if sigma <= half_arc:
        angle = lane.arc_start_angle + (sigma + half_arc) / cfg.r
        return (
            lane.arc_centre[0] + cfg.r * math.cos(angle),
            lane.arc_centre[1] + cfg.r * math.sin(angle),
        )
    ahead = sigma - half_arc
    return (
        lane.turn_end[0] + ahead * math.cos(lane.exit_heading),
        lane.turn_end[1] + ahead * math.sin(lane.exit_heading),
    )
