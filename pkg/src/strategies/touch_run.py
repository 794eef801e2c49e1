"""
Touch and Run
K curved lanes around the target, one per central-angle sector alpha = 2*pi/K.

A robot enters its sector along a straight line d/2 inside one sector boundary,
turns on an arc of radius r that grazes the target circle, and leaves along a
line d/2 inside the other boundary. The first robot of every lane starts at the
same distance, so K robots arrive together and a new wave follows every d_o/v.
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.base_strategy import BaseStrategy
from ..core.errors import DomainError
from ..core.model import SwarmParams
from ..core.rounding import floor13, round13
from ..core.validation import get_validator, require

MIN_LANES = 3


class TouchRunConfig(BaseModel):
    """Geometry of one touch-and-run layout."""

    model_config = ConfigDict(frozen=True)

    K: int = Field(ge=MIN_LANES)
    alpha: float = Field(gt=0, description="Central angle per lane (rad)")
    r: float = Field(gt=0, description="Turning radius (m)")
    d_prime: float = Field(gt=0, description="Arc-derived spacing (m)")
    d_o: float = Field(gt=0, description="Intra-lane spacing max(d, d') (m)")
    d_r: float = Field(gt=0, description="Distance from the centre where turning starts (m)")
    omega: float = Field(gt=0, description="Turning rate v/r (rad/s)")


class LaneGeometry(BaseModel):
    """Key points of one lane; the target centre is the origin."""

    model_config = ConfigDict(frozen=True)

    bisector: float
    entry_heading: float
    exit_heading: float
    turn_start: Tuple[float, float]
    arc_centre: Tuple[float, float]
    tangent_point: Tuple[float, float]
    turn_end: Tuple[float, float]
    arc_start_angle: float
    arc_sweep: float


def lane_domain(p: SwarmParams) -> Tuple[int, int]:
    """(3, K_max) with K_max = floor(pi / arcsin(d / 2s))."""
    validator = get_validator()
    require(validator.validate_wide_target(p))
    require(validator.validate_touch_run(p))
    k_max = floor13(math.pi / math.asin(p.d / (2 * p.s)))
    if k_max < MIN_LANES:
        raise DomainError("no lane count fits the target", precondition="K_max >= 3")
    return MIN_LANES, k_max


def turning_radius(K: int, p: SwarmParams) -> float:
    half = math.sin(math.pi / K)
    return (p.s * half - p.d / 2) / (1 - half)


def arc_spacing(r: float, alpha: float, d: float) -> float:
    """d' for a turning radius r; d in the same unit as r."""
    half = alpha / 2
    chord = 2 * r * math.cos(half)
    if chord < d:
        return r * (math.pi - alpha) + (d - chord) / math.sin(half)
    return 2 * r * math.asin(d / (2 * r))


def build_config(K: int, p: SwarmParams) -> TouchRunConfig:
    low, high = lane_domain(p)
    if not low <= K <= high:
        raise DomainError(f"K={K} outside [{low}, {high}]", precondition=f"{low} <= K <= {high}")
    r = turning_radius(K, p)
    if round13(r) <= 0:
        raise DomainError(f"K={K} gives no positive turning radius", precondition="r > 0")
    alpha = 2 * math.pi / K
    d_prime = arc_spacing(r, alpha, p.d)
    return TouchRunConfig(
        K=K,
        alpha=alpha,
        r=r,
        d_prime=d_prime,
        d_o=max(p.d, d_prime),
        d_r=math.sqrt(p.s * (2 * r + p.s) - r * p.d),
        omega=p.v / r,
    )


def is_feasible(cfg: TouchRunConfig, omega_max: Optional[float]) -> bool:
    return omega_max is None or round13(cfg.omega - omega_max) <= 0


def robots_arrived(K: int, T: float, p: SwarmParams, cfg: Optional[TouchRunConfig] = None) -> int:
    cfg = cfg or build_config(K, p)
    return K * floor13(p.v * T / cfg.d_o + 1)


def throughput_at(K: int, T: float, p: SwarmParams) -> float:
    require(get_validator().validate_horizon(T))
    return (robots_arrived(K, T, p) - 1) / T


def asymptotic(K: int, p: SwarmParams) -> float:
    cfg = build_config(K, p)
    return K * p.v / cfg.d_o


def scan_k(p: SwarmParams, omega_max: Optional[float] = None) -> List[Tuple[int, float, bool]]:
    """(K, asymptotic throughput, feasible under omega_max) over the whole domain."""
    low, high = lane_domain(p)
    rows = []
    for K in range(low, high + 1):
        try:
            cfg = build_config(K, p)
        except DomainError:
            rows.append((K, 0.0, False))
            continue
        rows.append((K, K * p.v / cfg.d_o, is_feasible(cfg, omega_max)))
    return rows


def best_K(p: SwarmParams, omega_max: Optional[float] = None) -> Tuple[int, float]:
    """Lane count with the highest limit throughput; ties go to the smaller K."""
    best: Optional[Tuple[int, float]] = None
    for K, f, feasible in scan_k(p, omega_max):
        if feasible and (best is None or f > best[1]):
            best = (K, f)
    if best is None:
        raise DomainError("no feasible lane count", precondition="feasible K exists")
    return best


def feasible_max(p: SwarmParams, omega_max: Optional[float]) -> int:
    feasible = [K for K, _, ok in scan_k(p, omega_max) if ok]
    if not feasible:
        raise DomainError("no feasible lane count", precondition="feasible K exists")
    return max(feasible)


def _unit(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


def lane_geometry(cfg: TouchRunConfig, lane: int, p: SwarmParams) -> LaneGeometry:
    """Entry line, arc and exit line of lane `lane` (0-based), bisector at 2*pi*lane/K."""
    phi = cfg.alpha * lane
    half = cfg.alpha / 2
    b = _unit(phi)
    u_in, n_in = _unit(phi + half), _unit(phi + half + math.pi / 2)
    u_out, n_out = _unit(phi - half), _unit(phi - half + math.pi / 2)
    # turning starts d_r from the centre, d/2 off the sector boundary
    reach = math.sqrt(cfg.d_r**2 - (p.d / 2) ** 2)
    centre = (cfg.r + p.s) * b
    start = reach * u_in - (p.d / 2) * n_in
    end = reach * u_out + (p.d / 2) * n_out
    tangent = p.s * b
    return LaneGeometry(
        bisector=phi,
        entry_heading=phi + half + math.pi,
        exit_heading=phi - half,
        turn_start=(float(start[0]), float(start[1])),
        arc_centre=(float(centre[0]), float(centre[1])),
        tangent_point=(float(tangent[0]), float(tangent[1])),
        turn_end=(float(end[0]), float(end[1])),
        arc_start_angle=phi + math.pi / 2 + half,
        arc_sweep=math.pi - cfg.alpha,
    )


class TouchRunStrategy(BaseStrategy):
    name = "touchrun"

    def __init__(self, params: SwarmParams, K: int):
        self.K = K
        super().__init__(params)

    def _validate(self) -> None:
        self.cfg = build_config(self.K, self.params)

    def count_at(self, T: float) -> int:
        return robots_arrived(self.K, T, self.params, self.cfg)

    def asymptotic_bounds(self) -> Tuple[float, float]:
        f = self.K * self.params.v / self.cfg.d_o
        return f, f

    def describe(self) -> dict:
        return {**super().describe(), "K": self.K}
