"""
Verification and comparison: the brute-force hex oracle, u sweeps and the
figure data builders (src.analysis.figures).
"""

from .comparison import StrategyCurvePoint, best_theta, crossover_u, f_t_of_u, sweep
from .hex_oracle import OracleCase, count, random_cases, verify

__all__ = [
    "StrategyCurvePoint",
    "best_theta",
    "crossover_u",
    "f_t_of_u",
    "sweep",
    "OracleCase",
    "count",
    "random_cases",
    "verify",
]
