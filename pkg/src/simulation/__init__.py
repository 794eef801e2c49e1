"""
Constant-speed kinematic simulation of every strategy.
"""

from .simulator import (
    RobotState,
    SimConfig,
    SimWorld,
    StrategyName,
    place_initial,
    run,
    run_series,
    step,
)

__all__ = [
    "RobotState",
    "SimConfig",
    "SimWorld",
    "StrategyName",
    "place_initial",
    "run",
    "run_series",
    "step",
]
