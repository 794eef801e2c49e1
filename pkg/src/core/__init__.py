"""
Core components shared by every strategy: parameter models, rounding,
validation, settings, logging, errors, output writers and the sweep pool.
"""

from .base_strategy import BaseStrategy
from .errors import DomainError, OracleMismatch, SimulationError, ThroughputLabError
from .logging_config import RunLogger, setup_logging
from .model import (
    SwarmParams,
    ThroughputSample,
    ThroughputSeries,
    mean_interarrival_throughput,
    throughput_from_arrivals,
)
from .output import ResultTable, RunManifest
from .settings import ExperimentDefaults, LabSettings, load_config
from .validation import ParameterValidator, get_validator, require
from .worker_pool import PoolConfig, SweepPool, run_ordered

__all__ = [
    "BaseStrategy",
    "DomainError",
    "OracleMismatch",
    "SimulationError",
    "ThroughputLabError",
    "RunLogger",
    "setup_logging",
    "SwarmParams",
    "ThroughputSample",
    "ThroughputSeries",
    "mean_interarrival_throughput",
    "throughput_from_arrivals",
    "ResultTable",
    "RunManifest",
    "ExperimentDefaults",
    "LabSettings",
    "load_config",
    "ParameterValidator",
    "get_validator",
    "require",
    "PoolConfig",
    "SweepPool",
    "run_ordered",
]
