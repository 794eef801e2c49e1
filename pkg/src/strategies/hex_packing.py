"""
Hexagonal Packing
Closed-form robot counting for a hexagonally packed swarm moving along +x
through a target of radius s.

The lattice is anchored at the first robot (x0, y0) = (s, 0); the target centre
is the origin. Robots that arrived within T seconds of the first one fill two
regions:
- a rectangle x0 <= x <= x0 + vT - s, |y - y0| <= s (present when vT > s)
- a cap of radius s in front of it, bounded by the rectangle's right edge
  (or by the line x = x0 when vT <= s)

Both are counted column by column on the lattice, N_R for the rectangle and
N_S for the cap. Every floor and ceil goes through the shared rounding policy.

Long windows put columns thousands of spacings away from the anchor, where a
plain float offset carries more error than the rounding policy absorbs. Row
bounds are therefore kept as an integer shift per column plus an O(1)
residual, and sines and cosines of the special angles are snapped to their
exact values so that lattice points lying on |y - y0| = s stay on it.
"""

import math
from typing import List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.base_strategy import BaseStrategy
from ..core.model import SwarmParams
from ..core.rounding import (
    ceil13,
    ceil13_array,
    floor13,
    floor13_array,
    round13,
    round13_array,
)
from ..core.settings import get_defaults
from ..core.validation import get_validator, require

logger = structlog.get_logger(__name__)

SQRT3 = math.sqrt(3)
PI_6 = math.pi / 6
LAST_ROBOT_WINDOW = 3.0
TRIG_SNAP = 1e-14
EXACT_TRIG_VALUES = (0.0, 0.5, SQRT3 / 2, 1.0)


def exact_trig(value: float) -> float:
    """Snap a sine or cosine lying within TRIG_SNAP of 0, 1/2, sqrt(3)/2 or 1."""
    for exact in EXACT_TRIG_VALUES:
        if abs(abs(value) - exact) < TRIG_SNAP:
            return math.copysign(exact, value) if exact else 0.0
    return value


class HexConfig(BaseModel):
    """Packing angle theta in [0, pi/3) and its complement psi = pi/3 - theta."""

    model_config = ConfigDict(frozen=True)

    theta: float = Field(ge=0)
    psi: float = Field(default=0.0)

    def __init__(self, **data: float):
        require(get_validator().validate_packing_angle(float(data.get("theta", 0.0))))
        super().__init__(**data)

    @model_validator(mode="before")
    @classmethod
    def _derive_psi(cls, data: dict) -> dict:
        if isinstance(data, dict):
            data = {**data, "psi": math.pi / 3 - float(data.get("theta", 0.0))}
        return data

    @classmethod
    def from_theta(cls, theta: float) -> "HexConfig":
        return cls(theta=theta)


class HexFrame(BaseModel):
    """
    Hex coordinates to plane coordinates.

    plane = origin + R(rotation) @ H @ (x_h, y_h), where H has columns (d, 0) and
    (-d/2, sqrt(3) d / 2). The product is built directly from the rotated basis
    vectors at angles rotation and rotation + 2 pi/3.
    """

    model_config = ConfigDict(frozen=True)

    d: float = Field(gt=0)
    rotation: float = 0.0
    origin: Tuple[float, float] = (0.0, 0.0)

    @property
    def matrix(self) -> np.ndarray:
        second = self.rotation + 2 * math.pi / 3
        return self.d * np.array(
            [
                [exact_trig(math.cos(self.rotation)), exact_trig(math.cos(second))],
                [exact_trig(math.sin(self.rotation)), exact_trig(math.sin(second))],
            ]
        )

    def offsets(self, x_h: np.ndarray, y_h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Plane offsets from the origin."""
        m = self.matrix
        return m[0, 0] * x_h + m[0, 1] * y_h, m[1, 0] * x_h + m[1, 1] * y_h

    def forward(self, x_h: np.ndarray, y_h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        dx, dy = self.offsets(x_h, y_h)
        return self.origin[0] + dx, self.origin[1] + dy

    def inverse(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        inv = np.linalg.inv(self.matrix)
        dx = np.asarray(x) - self.origin[0]
        dy = np.asarray(y) - self.origin[1]
        return inv[0, 0] * dx + inv[0, 1] * dy, inv[1, 0] * dx + inv[1, 1] * dy


def _split(a: np.ndarray, slope: float) -> Tuple[np.ndarray, np.ndarray]:
    """a * slope as a nearest integer plus a residual in [-1/2, 1/2]."""
    t = np.asarray(a, dtype=float) * slope
    n = np.rint(t)
    return n.astype(np.int64), t - n


class LatticeBasis(BaseModel):
    """
    Rectangle lattice basis in units of d, trig values snapped.

    Column a, row b sits at X = d (a cos_psi + b cb), Y = d (-a sin_psi + b sb)
    from the anchor, with cb = sin(pi/6 - theta) and sb = cos(theta - pi/6).
    """

    model_config = ConfigDict(frozen=True)

    cos_psi: float
    sin_psi: float
    cb: float
    sb: float

    @classmethod
    def for_config(cls, cfg: HexConfig) -> "LatticeBasis":
        return cls(
            cos_psi=exact_trig(math.cos(cfg.psi)),
            sin_psi=exact_trig(math.sin(cfg.psi)),
            cb=exact_trig(math.sin(PI_6 - cfg.theta)),
            sb=exact_trig(math.cos(cfg.theta - PI_6)),
        )

    @property
    def vertical(self) -> bool:
        """Rows run parallel to y (theta = pi/6)."""
        return self.cb == 0.0

    @property
    def row_slope(self) -> float:
        return self.sin_psi / self.sb

    @property
    def column_slope(self) -> float:
        return self.cos_psi / self.cb

    def offsets(self, a: np.ndarray, b: np.ndarray, d: float) -> Tuple[np.ndarray, np.ndarray]:
        """Plane offsets (X, Y) of lattice points from the anchor."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n, r = _split(a, self.row_slope)
        Y = d * self.sb * ((b - n) - r)
        if self.vertical:
            X = d * self.cos_psi * a
        else:
            m, q = _split(a, self.column_slope)
            X = d * self.cb * ((b + m) + q)
        return X, Y


class HexCountBreakdown(BaseModel):
    """All intermediate quantities of one f_h(T, theta) evaluation."""

    T: float
    theta: float
    n_l_minus: int = 0
    n_l_plus: int = 0
    K_prime: Optional[int] = None
    rect_count: int = Field(default=0, ge=0)
    semi_count: int = Field(default=0, ge=0)
    last_robot: Tuple[float, float]
    c_x: float
    C_rot: Tuple[float, float]
    B: int
    U: int

    @property
    def total(self) -> int:
        return self.rect_count + self.semi_count


def anchor(p: SwarmParams) -> Tuple[float, float]:
    return p.s, 0.0


def _rectangle_present(T: float, p: SwarmParams) -> bool:
    return round13(p.v * T - p.s) > 0


def _edge_tolerance(tolerance: Optional[float]) -> float:
    return get_defaults().edge_tolerance if tolerance is None else tolerance


def _edge_gap(X: np.ndarray, T: float, p: SwarmParams) -> np.ndarray:
    """(vT - s) - X, subtracting the large terms first."""
    return (p.v * T - X) - p.s


# ---------------------------------------------------------------------------
# Rectangle
# ---------------------------------------------------------------------------


def _column_bounds(
    a: np.ndarray, x_lo: float, x_hi: float, y_half: float, basis: LatticeBasis, d: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Rows of columns a inside the box x_lo <= X <= x_hi, |Y| <= y_half.

    Returns (n, lo, hi): row b is inside when n + lo <= b <= n + hi, with n an
    integer per column. Columns with no admissible row get lo = 1, hi = 0.
    """
    a = np.asarray(a, dtype=np.int64)
    n, r = _split(a, basis.row_slope)
    c_y = y_half / (d * basis.sb)
    lo = r - c_y
    hi = r + c_y

    if basis.vertical:
        ax = basis.cos_psi * a
        inside = (round13_array(ax - x_lo / d) >= 0) & (round13_array(ax - x_hi / d) <= 0)
        lo = np.where(inside, lo, 1.0)
        hi = np.where(inside, hi, 0.0)
    else:
        m, q = _split(a, basis.column_slope)
        x_min, x_max = sorted((x_lo / (d * basis.cb), x_hi / (d * basis.cb)))
        shift = m + n
        lo = np.maximum(lo, (x_min - q) - shift)
        hi = np.minimum(hi, (x_max - q) - shift)
    return n, lo, hi


def _row_span(
    a: np.ndarray, x_lo: float, x_hi: float, y_half: float, basis: LatticeBasis, d: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Integer (first row, row count) per column."""
    n, lo, hi = _column_bounds(a, x_lo, x_hi, y_half, basis, d)
    first = ceil13_array(lo)
    rows = np.maximum(floor13_array(hi) - first + 1, 0)
    return n + first, rows


def _column_range(
    x_lo: float, x_hi: float, y_half: float, basis: LatticeBasis, d: float
) -> Tuple[int, int]:
    """
    Columns whose line meets the box, widened by one on each side.

    An offset (X, Y) lies on column a = 2(X sb - Y cb)/(sqrt3 d).
    """
    k = 2 / (SQRT3 * d)
    tilt = abs(basis.cb)
    low = ceil13(k * (x_lo * basis.sb - y_half * tilt))
    high = floor13(k * (x_hi * basis.sb + y_half * tilt))
    return low - 1, high + 1


def _box_points(
    x_lo: float, x_hi: float, y_half: float, basis: LatticeBasis, d: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Offsets (X, Y) from the anchor of every lattice point inside the box."""
    a_min, a_max = _column_range(x_lo, x_hi, y_half, basis, d)
    a = np.arange(a_min, a_max + 1)
    first, rows = _row_span(a, x_lo, x_hi, y_half, basis, d)
    total = int(rows.sum())
    if total == 0:
        return np.empty(0), np.empty(0)
    starts = np.cumsum(rows) - rows
    aa = np.repeat(a, rows)
    bb = np.repeat(first, rows) + (np.arange(total) - np.repeat(starts, rows))
    return basis.offsets(aa, bb, d)


def lane_line_counts(T: float, cfg: HexConfig, p: SwarmParams) -> Optional[Tuple[int, int]]:
    """(n_l_minus, n_l_plus), or None when vT <= s and there is no rectangle."""
    if not _rectangle_present(T, p):
        return None
    basis = LatticeBasis.for_config(cfg)
    width = p.v * T - p.s
    tilt = abs(basis.cb)
    n_plus = floor13((2 * width * basis.sb + 2 * p.s * tilt) / (SQRT3 * p.d) + 1)
    n_minus = floor13(2 * p.s * tilt / (SQRT3 * p.d))
    return n_minus, n_plus


def rect_column_range(x_h: int, T: float, cfg: HexConfig, p: SwarmParams) -> Tuple[float, float]:
    """(Y1_R, Y2_R) for one column, before ceil/floor."""
    width = p.v * T - p.s
    n, lo, hi = _column_bounds(
        np.array([x_h]), 0.0, width, p.s, LatticeBasis.for_config(cfg), p.d
    )
    return float(n[0] + lo[0]), float(n[0] + hi[0])


def _k_prime(T: float, cfg: HexConfig, p: SwarmParams) -> int:
    basis = LatticeBasis.for_config(cfg)
    width = p.v * T - p.s
    return ceil13(2 * (width * basis.sb - p.s * abs(basis.cb)) / (SQRT3 * p.d))


def count_rectangle(T: float, cfg: HexConfig, p: SwarmParams) -> int:
    counts = lane_line_counts(T, cfg, p)
    if counts is None:
        return 0
    n_minus, n_plus = counts
    width = p.v * T - p.s
    # one spare column each side; the row bounds reject columns outside the rectangle
    a = np.arange(-n_minus - 1, n_plus + 1)
    _, rows = _row_span(a, 0.0, width, p.s, LatticeBasis.for_config(cfg), p.d)
    return int(rows.sum())


def _last_offset(T: float, cfg: HexConfig, p: SwarmParams) -> Optional[Tuple[float, float]]:
    """Offset from the anchor of the last rectangle robot, None without one."""
    if not _rectangle_present(T, p):
        return None
    basis = LatticeBasis.for_config(cfg)
    width = p.v * T - p.s
    window = LAST_ROBOT_WINDOW * p.d

    X, Y = _box_points(max(0.0, width - window), width, min(p.s, window), basis, p.d)
    best = _closest_to_edge(X, Y, T, p)
    if best is None or round13(abs(_edge_gap(best[0], T, p)) + abs(best[1]) - window) > 0:
        X, Y = _box_points(0.0, width, p.s, basis, p.d)
        best = _closest_to_edge(X, Y, T, p)
    if best is None:
        logger.debug("empty_rectangle", T=T, theta=cfg.theta)
    return best


def last_robot_in_rectangle(T: float, cfg: HexConfig, p: SwarmParams) -> Tuple[float, float]:
    """
    Rectangle robot closest (L1) to the middle of the right edge.

    Ties go to the robot nearest y0, then the rightmost, then the lowest.
    Falls back to the anchor when vT <= s or the rectangle holds no robot.
    """
    x0, y0 = anchor(p)
    offset = _last_offset(T, cfg, p)
    if offset is None:
        return x0, y0
    return x0 + offset[0], y0 + offset[1]


def _closest_to_edge(
    X: np.ndarray, Y: np.ndarray, T: float, p: SwarmParams
) -> Optional[Tuple[float, float]]:
    if X.size == 0:
        return None
    l1 = round13_array(np.abs(_edge_gap(X, T, p)) + np.abs(Y))
    order = np.lexsort((Y, -X, round13_array(np.abs(Y)), l1))
    k = int(order[0])
    return float(X[k]), float(Y[k])


# ---------------------------------------------------------------------------
# Cap
# ---------------------------------------------------------------------------


def _offset_of(last: Tuple[float, float], p: SwarmParams) -> Tuple[float, float]:
    x0, y0 = anchor(p)
    return last[0] - x0, last[1] - y0


def _cap_frame(
    T: float, cfg: HexConfig, p: SwarmParams, offset: Optional[Tuple[float, float]]
) -> Tuple[bool, float, float, float, float]:
    """
    (rectangle present, dx, dy, C_x, C_y).

    (dx, dy) is the circle centre relative to the cap origin: the last
    rectangle robot when there is one, else the anchor. C is the same vector in
    the -theta frame.
    """
    present = _rectangle_present(T, p)
    ox, oy = offset if present and offset is not None else (0.0, 0.0)
    dx = (p.v * T - ox) - p.s
    dy = -oy
    ct, st = exact_trig(math.cos(cfg.theta)), exact_trig(math.sin(cfg.theta))
    return present, dx, dy, ct * dx + st * dy, -st * dx + ct * dy


def _cap_reaches_top(T: float, cfg: HexConfig, p: SwarmParams) -> bool:
    """True when the point of the circle furthest along the column normal lies right of x0."""
    w = p.v * T - p.s
    angle = math.atan2(
        p.s / 2 - math.sin(cfg.theta) * w, SQRT3 * p.s / 2 + math.cos(cfg.theta) * w
    )
    return round13(angle - (math.pi / 2 - cfg.theta)) <= 0


def _semicircle_bounds(
    T: float, cfg: HexConfig, p: SwarmParams, offset: Optional[Tuple[float, float]]
) -> Tuple[int, int]:
    present, dx, dy, _, _ = _cap_frame(T, cfg, p, offset)
    m_x = exact_trig(math.cos(cfg.theta + PI_6))
    m_y = exact_trig(math.sin(cfg.theta + PI_6))
    k = 2 / (SQRT3 * p.d)
    if present:
        base = dx * m_x + dy * m_y
        return ceil13(k * (base - p.s * m_y)), floor13(k * (base + p.s))
    vt = p.v * T
    h = math.sqrt(max(round13(2 * p.s * vt - vt * vt), 0.0))
    lower = ceil13(-k * h * m_y)
    if _cap_reaches_top(T, cfg, p):
        return lower, floor13(k * ((vt - p.s) * m_x + p.s))
    return lower, floor13(k * h * m_y)


def semicircle_bounds(
    T: float, cfg: HexConfig, p: SwarmParams, last: Tuple[float, float]
) -> Tuple[int, int]:
    """Column range [B, U] of the cap in the frame anchored at `last`."""
    return _semicircle_bounds(T, cfg, p, _offset_of(last, p))


def _cap_columns(
    x_h: np.ndarray,
    T: float,
    cfg: HexConfig,
    p: SwarmParams,
    offset: Optional[Tuple[float, float]],
    tolerance: float,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Y1_S, Y2_S, valid) per column; valid is False where the column misses the circle."""
    present, _, _, C_x, C_y = _cap_frame(T, cfg, p, offset)
    d, s = p.d, p.s
    i = np.asarray(x_h, dtype=float)
    A = d * i - C_x
    delta = round13_array(4 * s * s - (SQRT3 * A - C_y) ** 2)
    valid = delta >= 0
    root = np.sqrt(np.maximum(delta, 0.0))
    c1 = (A + SQRT3 * C_y - root) / (2 * d)
    c2 = (A + SQRT3 * C_y + root) / (2 * d)

    ds = d * exact_trig(math.sin(cfg.theta + PI_6))
    ct, st = exact_trig(math.cos(cfg.theta)), exact_trig(math.sin(cfg.theta))
    if present:
        L = (ct * A + st * C_y) / ds
        y2 = np.minimum(c2, L)
        # the robot on the rectangle's right edge was already counted there
        l_floor = floor13_array(L)
        near_edge = (round13_array(L) - l_floor) < tolerance
        on_edge = round13_array((L - l_floor) * ds) <= 0
        duplicate = near_edge & on_edge & (floor13_array(y2) >= l_floor)
        y2 = np.where(duplicate, l_floor - 1.0, y2)
    else:
        L0 = d * ct * i / ds
        y2 = np.minimum(c2, L0)
    return c1, y2, valid


def semicircle_column_range(
    x_h: int,
    T: float,
    cfg: HexConfig,
    p: SwarmParams,
    last: Tuple[float, float],
    tolerance: Optional[float] = None,
) -> Optional[Tuple[float, float]]:
    """(Y1_S, Y2_S) for one column, or None when the column line misses the circle."""
    c1, y2, valid = _cap_columns(
        np.array([x_h]), T, cfg, p, _offset_of(last, p), _edge_tolerance(tolerance)
    )
    if not bool(valid[0]):
        return None
    return float(c1[0]), float(y2[0])


def _count_cap(
    T: float,
    cfg: HexConfig,
    p: SwarmParams,
    offset: Optional[Tuple[float, float]],
    tolerance: Optional[float],
) -> int:
    B, U = _semicircle_bounds(T, cfg, p, offset)
    if U < B:
        return 0
    columns = np.arange(B, U + 1)
    c1, y2, valid = _cap_columns(columns, T, cfg, p, offset, _edge_tolerance(tolerance))
    per_column = np.maximum(floor13_array(y2) - ceil13_array(c1) + 1, 0)
    return int(np.where(valid, per_column, 0).sum())


def count_semicircle(
    T: float,
    cfg: HexConfig,
    p: SwarmParams,
    last: Optional[Tuple[float, float]] = None,
    tolerance: Optional[float] = None,
) -> int:
    offset = _last_offset(T, cfg, p) if last is None else _offset_of(last, p)
    return _count_cap(T, cfg, p, offset, tolerance)


# ---------------------------------------------------------------------------
# Totals and throughput
# ---------------------------------------------------------------------------


def count_breakdown(
    T: float, cfg: HexConfig, p: SwarmParams, tolerance: Optional[float] = None
) -> HexCountBreakdown:
    x0, y0 = anchor(p)
    offset = _last_offset(T, cfg, p)
    present, _, _, C_x, C_y = _cap_frame(T, cfg, p, offset)
    B, U = _semicircle_bounds(T, cfg, p, offset)
    lines = lane_line_counts(T, cfg, p)
    n_minus, n_plus = lines if lines is not None else (0, 0)
    last = (x0, y0) if offset is None else (x0 + offset[0], y0 + offset[1])
    return HexCountBreakdown(
        T=T,
        theta=cfg.theta,
        n_l_minus=n_minus,
        n_l_plus=n_plus,
        K_prime=_k_prime(T, cfg, p) if present else None,
        rect_count=count_rectangle(T, cfg, p),
        semi_count=_count_cap(T, cfg, p, offset, tolerance),
        last_robot=last,
        c_x=x0 + p.v * T - p.s,
        C_rot=(C_x, C_y),
        B=B,
        U=U,
    )


def robots_arrived(T: float, cfg: HexConfig, p: SwarmParams) -> int:
    offset = _last_offset(T, cfg, p)
    return count_rectangle(T, cfg, p) + _count_cap(T, cfg, p, offset, None)


def throughput_at(T: float, cfg: HexConfig, p: SwarmParams) -> float:
    require(get_validator().validate_horizon(T))
    require(get_validator().validate_wide_target(p))
    return (robots_arrived(T, cfg, p) - 1) / T


def upper_bound_asymptotic(p: SwarmParams) -> float:
    """Densest-packing ceiling on the limit throughput, independent of theta."""
    require(get_validator().validate_wide_target(p))
    return (2 / SQRT3) * (2 * p.s / p.d + 1) * (p.v / p.d)


def asymptotic_bounds(cfg: HexConfig, p: SwarmParams) -> Tuple[float, float]:
    """(low exclusive, high inclusive) interval holding lim f_h(T, theta)."""
    require(get_validator().validate_wide_target(p))
    centre = 4 * p.v * p.s / (SQRT3 * p.d**2)
    spread = 2 * p.v * math.cos(cfg.theta - PI_6) / (SQRT3 * p.d)
    return centre - spread, centre + spread


def theta_grid(n_samples: int) -> List[float]:
    """n_samples evenly spaced angles k * (pi/3) / n_samples in [0, pi/3)."""
    return [k * (math.pi / 3) / n_samples for k in range(n_samples)]


def theta_profile(T: float, p: SwarmParams, n_samples: int) -> List[Tuple[float, float]]:
    """f_h(T, theta) over theta_grid(n_samples)."""
    return [(theta, throughput_at(T, HexConfig(theta=theta), p)) for theta in theta_grid(n_samples)]


class HexPackingStrategy(BaseStrategy):
    name = "hex"

    def __init__(self, params: SwarmParams, theta: float):
        self.cfg = HexConfig(theta=theta)
        super().__init__(params)

    def _validate(self) -> None:
        require(self.validator.validate_wide_target(self.params))

    def count_at(self, T: float) -> int:
        return robots_arrived(T, self.cfg, self.params)

    def breakdown(self, T: float) -> HexCountBreakdown:
        return count_breakdown(T, self.cfg, self.params)

    def asymptotic_bounds(self) -> Tuple[float, float]:
        return asymptotic_bounds(self.cfg, self.params)

    def limit_columns(self) -> dict:
        low, high = self.asymptotic_bounds()
        return {"f_low": low, "f_high": high}

    def describe(self) -> dict:
        return {**super().describe(), "theta": self.cfg.theta}
