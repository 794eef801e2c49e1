"""
Base Strategy
Common surface shared by every entry strategy (compact lanes, parallel lanes,
hexagonal packing, touch and run).

A strategy answers three questions for fixed SwarmParams:
- how many robots reached the target T seconds after the first one
- the throughput f(T) = (N(T) - 1) / T
- where f(T) settles as T grows
"""

from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Tuple

import structlog

from .model import SwarmParams
from .rounding import grid_times
from .validation import get_validator, require

logger = structlog.get_logger(__name__)


class BaseStrategy(ABC):
    """Abstract base class for all entry strategies."""

    name: ClassVar[str] = "strategy"

    def __init__(self, params: SwarmParams):
        self.params = params
        self.validator = get_validator()
        self._validate()

    @abstractmethod
    def _validate(self) -> None:
        """Raise DomainError when params are outside the strategy's domain."""

    @abstractmethod
    def count_at(self, T: float) -> int:
        """Robots arrived within T seconds of the first arrival (first one included)."""

    @abstractmethod
    def asymptotic_bounds(self) -> Tuple[float, float]:
        """(low, high) limit of f(T); low == high when the limit is exact."""

    def throughput_at(self, T: float) -> float:
        require(self.validator.validate_horizon(T))
        return (self.count_at(T) - 1) / T

    def asymptotic(self) -> float:
        return self.asymptotic_bounds()[1]

    def limit_columns(self) -> Dict[str, float]:
        """Limit values written next to f_analytic in every series row."""
        return {"f_asymptotic": self.asymptotic()}

    @property
    def series_columns(self) -> List[str]:
        return ["t", "f_analytic", *self.limit_columns()]

    def describe(self) -> Dict[str, Any]:
        return {"strategy": self.name, **self.params.model_dump()}

    def series(self, t_max: float, dt: float) -> List[Dict[str, float]]:
        """f(T) on the grid dt, 2dt, ... t_max together with the limit columns."""
        limits = self.limit_columns()
        rows = [
            {"t": t, "f_analytic": self.throughput_at(t), **limits} for t in grid_times(t_max, dt)
        ]
        logger.debug("series_evaluated", strategy=self.name, points=len(rows))
        return rows
