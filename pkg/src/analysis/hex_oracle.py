"""
Hex Oracle
Brute-force lattice enumeration used as ground truth for the hexagonal
packing counts.

Candidates are generated column by column over a padded bounding box and kept
by direct Euclidean membership tests, so nothing here shares code with the
column formulas except the rounding policy and the lattice definition.
Membership is decided on offsets from the first robot, with the large terms
subtracted before the target radius is added back, so the tests stay exact on
long windows.
"""

import math
from typing import List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from ..core.errors import OracleMismatch
from ..core.model import SwarmParams
from ..core.rounding import round13, round13_array
from ..core.worker_pool import run_ordered
from ..strategies import hex_packing
from ..strategies.hex_packing import HexConfig, HexFrame, anchor

logger = structlog.get_logger(__name__)

BOX_PADDING = 2.0
FLAT_COEFFICIENT = 1e-12


class LatticePoint(BaseModel):
    """A lattice robot in hex and plane coordinates."""

    model_config = ConfigDict(frozen=True)

    x_h: int
    y_h: int
    x: float
    y: float


def _lattice_offsets(
    theta: float, p: SwarmParams, x_lo: float, x_hi: float, y_lo: float, y_hi: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(x_h, y_h, X, Y) of lattice points whose offset from the first robot lies in a box."""
    frame = HexFrame(d=p.d, rotation=theta)
    hx, hy = frame.inverse(np.array([x_lo, x_lo, x_hi, x_hi]), np.array([y_lo, y_hi, y_lo, y_hi]))
    i = np.arange(math.floor(hx.min()) - 1, math.ceil(hx.max()) + 2)
    j_lo = np.full(i.shape, math.floor(hy.min()) - 1.0)
    j_hi = np.full(i.shape, math.ceil(hy.max()) + 1.0)

    m = frame.matrix
    for c_i, c_j, lo, hi in ((m[0, 0], m[0, 1], x_lo, x_hi), (m[1, 0], m[1, 1], y_lo, y_hi)):
        if abs(c_j) <= FLAT_COEFFICIENT * p.d:
            continue
        ends = np.sort(np.stack([(lo - c_i * i) / c_j, (hi - c_i * i) / c_j]), axis=0)
        j_lo = np.maximum(j_lo, np.floor(ends[0]) - 1)
        j_hi = np.minimum(j_hi, np.ceil(ends[1]) + 1)

    first = j_lo.astype(np.int64)
    rows = np.maximum(j_hi.astype(np.int64) - first + 1, 0)
    total = int(rows.sum())
    starts = np.cumsum(rows) - rows
    I = np.repeat(i, rows)
    J = np.repeat(first, rows) + (np.arange(total) - np.repeat(starts, rows))
    X, Y = frame.offsets(I, J)
    keep = (X >= x_lo) & (X <= x_hi) & (Y >= y_lo) & (Y <= y_hi)
    return I[keep], J[keep], X[keep], Y[keep]


def lattice_box(
    theta: float, p: SwarmParams, x_lo: float, x_hi: float, y_lo: float, y_hi: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(x_h, y_h, x, y) arrays of lattice points anchored at the first robot inside a box."""
    x0, y0 = anchor(p)
    I, J, X, Y = _lattice_offsets(theta, p, x_lo - x0, x_hi - x0, y_lo - y0, y_hi - y0)
    return I, J, x0 + X, y0 + Y


def _offset_masks(
    X: np.ndarray, Y: np.ndarray, T: float, p: SwarmParams
) -> Tuple[np.ndarray, np.ndarray]:
    # offset from the circle centre (vT - s, 0)
    ex = (X - p.v * T) + p.s

    ahead_of_first = round13_array(X) >= 0
    in_band = round13_array(np.abs(Y) - p.s) <= 0
    in_circle = round13_array(np.hypot(ex, Y) - p.s) <= 0
    right_of_edge = round13_array(ex) > 0

    if round13(p.v * T - p.s) > 0:
        rect = ahead_of_first & in_band & ~right_of_edge
        cap = in_circle & right_of_edge
    else:
        rect = np.zeros_like(ahead_of_first)
        cap = in_circle & ahead_of_first
    return rect, cap


def region_masks(
    X: np.ndarray, Y: np.ndarray, T: float, p: SwarmParams
) -> Tuple[np.ndarray, np.ndarray]:
    """(rectangle, cap) membership of plane points for the window T."""
    x0, y0 = anchor(p)
    return _offset_masks(np.asarray(X) - x0, np.asarray(Y) - y0, T, p)


def _region(T: float, theta: float, p: SwarmParams):
    x0, y0 = anchor(p)
    pad = BOX_PADDING * p.d
    I, J, X, Y = _lattice_offsets(
        theta, p, -pad, max(p.v * T, 0.0) + pad, -p.s - pad, p.s + pad
    )
    rect, cap = _offset_masks(X, Y, T, p)
    return I, J, x0 + X, y0 + Y, rect, cap


def enumerate_region(T: float, cfg: HexConfig, p: SwarmParams) -> List[LatticePoint]:
    I, J, X, Y, rect, cap = _region(T, cfg.theta, p)
    keep = rect | cap
    return [
        LatticePoint(x_h=int(i), y_h=int(j), x=float(x), y=float(y))
        for i, j, x, y in zip(I[keep], J[keep], X[keep], Y[keep])
    ]


def region_points(T: float, theta: float, p: SwarmParams) -> Tuple[np.ndarray, np.ndarray]:
    """Plane coordinates of every robot in the region, for any theta."""
    _, _, X, Y, rect, cap = _region(T, theta, p)
    keep = rect | cap
    return X[keep], Y[keep]


def count_parts(T: float, cfg: HexConfig, p: SwarmParams) -> Tuple[int, int]:
    """(rectangle, cap) counts."""
    *_, rect, cap = _region(T, cfg.theta, p)
    return int(rect.sum()), int(cap.sum())


def count_for_angle(T: float, theta: float, p: SwarmParams) -> int:
    """Count for an arbitrary rotation, outside [0, pi/3) included."""
    *_, rect, cap = _region(T, theta, p)
    return int((rect | cap).sum())


def count(T: float, cfg: HexConfig, p: SwarmParams) -> int:
    return count_for_angle(T, cfg.theta, p)


# ---------------------------------------------------------------------------
# Random equivalence checks
# ---------------------------------------------------------------------------


class OracleCase(BaseModel):
    """One (u, theta, T) configuration compared against the closed form."""

    model_config = ConfigDict(frozen=True)

    s: float
    theta: float
    T: float
    v: float = 1.0
    d: float = 1.0

    @property
    def params(self) -> SwarmParams:
        return SwarmParams(v=self.v, d=self.d, s=self.s)


def random_cases(
    samples: int,
    seed: int,
    d: float = 1.0,
    v: float = 1.0,
    u_max: float = 10.0,
    t_max: Optional[float] = None,
) -> List[OracleCase]:
    """u in [0.5, u_max], theta in [0, pi/3), T in (0, t_max], t_max defaulting to 50 d/v."""
    horizon = 50 * d / v if t_max is None else t_max
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.5, u_max, samples)
    theta = rng.uniform(0.0, math.pi / 3, samples)
    T = (1.0 - rng.random(samples)) * horizon
    return [
        OracleCase(s=float(u_k * d), theta=float(theta_k), T=float(T_k), v=v, d=d)
        for u_k, theta_k, T_k in zip(u, theta, T)
    ]


def check_case(case: OracleCase) -> Optional[dict]:
    """None when the closed form and the enumeration agree, else the disagreement."""
    cfg = HexConfig(theta=case.theta)
    p = case.params
    closed = hex_packing.robots_arrived(case.T, cfg, p)
    brute = count(case.T, cfg, p)
    if closed == brute:
        return None
    return {**case.model_dump(), "closed_form": closed, "oracle": brute}


def verify(cases: List[OracleCase], jobs: int = 1) -> List[dict]:
    """Every disagreement among the cases, in case order."""
    results = run_ordered(check_case, cases, jobs=jobs)
    mismatches = [result for result in results if result is not None]
    logger.debug("oracle_verified", cases=len(cases), mismatches=len(mismatches))
    return mismatches


def assert_matches(T: float, cfg: HexConfig, p: SwarmParams) -> int:
    """Closed-form count, raising OracleMismatch if the enumeration disagrees."""
    closed = hex_packing.robots_arrived(T, cfg, p)
    brute = count(T, cfg, p)
    if closed != brute:
        raise OracleMismatch(
            f"closed form {closed} != enumeration {brute}",
            config={"T": T, "theta": cfg.theta, **p.model_dump()},
        )
    return closed
