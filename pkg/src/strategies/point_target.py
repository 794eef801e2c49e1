"""
Point Target
Minimum delay between two robots converging on a point target (s = 0), and
the single-queue optimum v/d.
"""

import math
from typing import Callable, List, Tuple

import numpy as np

from ..core.errors import DomainError
from ..core.model import SwarmParams
from ..core.validation import get_validator, require

GOLDEN = (math.sqrt(5) - 1) / 2


def normalized_delay(theta: float) -> float:
    """sqrt(2 / (1 + cos theta)); 1 at theta = 0, 2 at theta = 2*pi/3."""
    require(get_validator().validate_approach_angle(theta))
    return math.sqrt(2.0 / (1.0 + math.cos(theta)))


def min_delay(theta: float, p: SwarmParams) -> float:
    """Smallest arrival gap (s) keeping two robots on lines at angle theta at least d apart."""
    return (p.d / p.v) * normalized_delay(theta)


def optimal_point_throughput(p: SwarmParams) -> float:
    return p.v / p.d


def delay_curve(n_samples: int, theta_max: float = math.pi) -> List[Tuple[float, float]]:
    """(theta, delay ratio) at n_samples evenly spaced angles in [0, theta_max)."""
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1", precondition="n_samples >= 1")
    thetas = np.linspace(0.0, theta_max, n_samples, endpoint=False)
    return [(float(t), normalized_delay(float(t))) for t in thetas]


def pair_distance(theta: float, tau: float, p: SwarmParams) -> Callable[[float], float]:
    """
    Distance l(t) between two robots crossing the target point tau seconds apart.

    Robot A passes the point at t = 0, robot B at t = tau; both move at speed v
    along lines meeting at angle theta.
    """
    ax, ay = 1.0, 0.0
    bx, by = math.cos(theta), math.sin(theta)

    def distance(t: float) -> float:
        dx = p.v * (t * ax - (t - tau) * bx)
        dy = p.v * (t * ay - (t - tau) * by)
        return math.hypot(dx, dy)

    return distance


def _golden_section(fn: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    e = a + GOLDEN * (b - a)
    fc, fe = fn(c), fn(e)
    while b - a > tol:
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, e, fe
            e = a + GOLDEN * (b - a)
            fe = fn(e)
    return min(fc, fe, fn((a + b) / 2))


def pair_distance_min(theta: float, p: SwarmParams, grid_points: int = 2001) -> float:
    """Numerical minimum of l(t) when the robots are exactly min_delay apart."""
    tau = min_delay(theta, p)
    distance = pair_distance(theta, tau, p)
    span = 5 * max(tau, p.d / p.v)
    ts = np.linspace(-span, span + tau, grid_points)
    values = [distance(float(t)) for t in ts]
    k = int(np.argmin(values))
    lo = float(ts[max(k - 1, 0)])
    hi = float(ts[min(k + 1, grid_points - 1)])
    return min(values[k], _golden_section(distance, lo, hi, 1e-12))
