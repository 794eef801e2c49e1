"""
Parallel Lanes
floor(2s/d) + 1 straight lanes, d apart, crossing a target with s >= d/2.

Lane i runs at height s - (i-1)d and its robots start at (s + k*d, s - (i-1)d)
relative to the target centre. Lanes near the middle reach the circle first;
lane i is late by d_i - d_J, where J is the first lane to arrive.
"""

import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..core.base_strategy import BaseStrategy
from ..core.errors import DomainError
from ..core.model import SwarmParams
from ..core.rounding import ceil13, floor13, leq13
from ..core.validation import get_validator, require


class ParallelLayout(BaseModel):
    """Lane count, first lane and per-lane extra distances."""

    model_config = ConfigDict(frozen=True)

    lanes: int = Field(ge=2)
    J: int = Field(ge=1, description="1-based index of the first lane to arrive")
    d_extra: List[float] = Field(description="d_j for j = 1..lanes (m)")

    @property
    def d_first(self) -> float:
        return self.d_extra[self.J - 1]

    def lane_height(self, i: int, p: SwarmParams) -> float:
        return p.s - (i - 1) * p.d


def layout(p: SwarmParams) -> ParallelLayout:
    require(get_validator().validate_wide_target(p))
    lanes = floor13(2 * p.s / p.d) + 1
    lower = floor13(p.s / p.d)
    upper = ceil13(p.s / p.d)
    if abs(p.s - lower * p.d) <= abs(p.s - upper * p.d):
        J = lower + 1
    else:
        J = upper + 1
    d_extra = []
    for j in range(1, lanes + 1):
        y = p.s - (j - 1) * p.d
        d_extra.append(p.s - math.sqrt(max(p.s**2 - y**2, 0.0)))
    return ParallelLayout(lanes=lanes, J=J, d_extra=d_extra)


def robots_in_lane(i: int, T: float, p: SwarmParams, lanes: Optional[ParallelLayout] = None) -> int:
    lanes = lanes or layout(p)
    if not 1 <= i <= lanes.lanes:
        raise DomainError(
            f"lane index {i} outside 1..{lanes.lanes}", precondition="1 <= i <= lanes"
        )
    if T < 0:
        raise DomainError("T must be >= 0", precondition="T >= 0")
    delay = lanes.d_extra[i - 1] - lanes.d_first
    if not leq13(delay, p.v * T):
        return 0
    return floor13((p.v * T - delay) / p.d + 1)


def robots_arrived(T: float, p: SwarmParams) -> int:
    lanes = layout(p)
    return sum(robots_in_lane(i, T, p, lanes) for i in range(1, lanes.lanes + 1))


def throughput_at(T: float, p: SwarmParams) -> float:
    require(get_validator().validate_horizon(T))
    return (robots_arrived(T, p) - 1) / T


def asymptotic(p: SwarmParams) -> float:
    require(get_validator().validate_wide_target(p))
    return floor13(2 * p.s / p.d + 1) * p.v / p.d


class ParallelLanesStrategy(BaseStrategy):
    name = "parallel"

    def _validate(self) -> None:
        self.layout = layout(self.params)

    def count_at(self, T: float) -> int:
        return sum(
            robots_in_lane(i, T, self.params, self.layout)
            for i in range(1, self.layout.lanes + 1)
        )

    def asymptotic_bounds(self) -> Tuple[float, float]:
        f = asymptotic(self.params)
        return f, f
