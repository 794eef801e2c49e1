"""
Compact Lanes
Two parallel lanes 2s apart for small targets (0 < s < d/2).

The lanes touch the target circle at opposite sides. Robots in one lane are
offset by d_p from the other lane so every cross-lane pair stays d apart.
"""

import math
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..core.base_strategy import BaseStrategy
from ..core.errors import DomainError
from ..core.model import SwarmParams
from ..core.rounding import floor13, leq13
from ..core.validation import get_validator, require


class CompactRegime(str, Enum):
    NARROW = "narrow"
    WIDE = "wide"


class CompactLayout(BaseModel):
    """Lane geometry of the compact-lanes strategy."""

    model_config = ConfigDict(frozen=True)

    d_p: float = Field(gt=0, description="Longitudinal offset between the lanes (m)")
    d_e: float = Field(gt=0, description="Spacing between robots of one lane (m)")
    regime: CompactRegime


def narrow_threshold(p: SwarmParams) -> float:
    return math.sqrt(3) * p.d / 4


def layout(p: SwarmParams) -> CompactLayout:
    require(get_validator().validate_compact(p))
    if leq13(p.s, narrow_threshold(p)):
        d_p = math.sqrt(p.d**2 - (2 * p.s) ** 2)
        return CompactLayout(d_p=d_p, d_e=2 * d_p, regime=CompactRegime.NARROW)
    # equilateral-triangle formation
    return CompactLayout(d_p=p.d / 2, d_e=p.d, regime=CompactRegime.WIDE)


def robots_arrived(T: float, p: SwarmParams) -> int:
    """Top lane first: top robots arrive every d_e/v, bottom robots d_p/v later."""
    if T < 0:
        raise DomainError("T must be >= 0", precondition="T >= 0")
    lanes = layout(p)
    phase = p.v * T / lanes.d_e
    return floor13(phase) + floor13(phase + 0.5) + 1


def throughput_at(T: float, p: SwarmParams) -> float:
    require(get_validator().validate_horizon(T))
    return (robots_arrived(T, p) - 1) / T


def asymptotic(p: SwarmParams) -> float:
    lanes = layout(p)
    if lanes.regime is CompactRegime.NARROW:
        return p.v / (p.d * math.sqrt(1 - (2 * p.s / p.d) ** 2))
    return 2 * p.v / p.d


class CompactLanesStrategy(BaseStrategy):
    name = "compact"

    def _validate(self) -> None:
        self.layout = layout(self.params)

    def count_at(self, T: float) -> int:
        return robots_arrived(T, self.params)

    def asymptotic_bounds(self) -> Tuple[float, float]:
        f = asymptotic(self.params)
        return f, f
