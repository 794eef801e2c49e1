"""
Shared rounding policy.

Every floor and ceil over a floating point expression goes through this module,
which first rounds to a fixed number of decimals: numerics.decimals from the
experiment configuration, 13 unless overridden. Closed-form counts, the lattice
oracle and the simulator therefore agree on boundary points.
"""

import math
from typing import List, Optional

import numpy as np

from .settings import get_defaults


def configured_decimals() -> int:
    return get_defaults().decimals


def _places(decimals: Optional[int]) -> int:
    return configured_decimals() if decimals is None else decimals


def round13(value: float, decimals: Optional[int] = None) -> float:
    return round(value, _places(decimals))


def floor13(value: float, decimals: Optional[int] = None) -> int:
    return math.floor(round(value, _places(decimals)))


def ceil13(value: float, decimals: Optional[int] = None) -> int:
    return math.ceil(round(value, _places(decimals)))


def leq13(a: float, b: float, decimals: Optional[int] = None) -> bool:
    """a <= b once the difference is rounded."""
    return round(a - b, _places(decimals)) <= 0


def round13_array(values: np.ndarray, decimals: Optional[int] = None) -> np.ndarray:
    return np.round(values, _places(decimals))


def floor13_array(values: np.ndarray, decimals: Optional[int] = None) -> np.ndarray:
    return np.floor(np.round(values, _places(decimals))).astype(np.int64)


def ceil13_array(values: np.ndarray, decimals: Optional[int] = None) -> np.ndarray:
    return np.ceil(np.round(values, _places(decimals))).astype(np.int64)


def grid_times(t_max: float, dt: float) -> List[float]:
    """Sample instants dt, 2dt, ... up to t_max, computed as k*dt to avoid drift."""
    steps = floor13(t_max / dt)
    return [k * dt for k in range(1, steps + 1)]
