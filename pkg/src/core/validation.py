"""
Parameter Validation
Domain checks for every strategy before a formula or a layout is evaluated.

Each check returns (is_valid, error_message) so callers can report without
raising; `require` turns a failed check into a DomainError.
"""

import math
from typing import Optional, Tuple

from pydantic import BaseModel, Field

from .errors import DomainError
from .model import SwarmParams

Check = Tuple[bool, Optional[str]]


class ValidationConfig(BaseModel):
    """Tolerances used by the domain checks."""

    angle_tolerance: float = Field(default=1e-12, ge=0)
    max_horizon: float = Field(default=1e9, gt=0, description="Largest accepted T (s)")


class ParameterValidator:
    """
    Validates SwarmParams and evaluation horizons against each strategy's domain.

    Domains:
    - point target: any s (the formula ignores s)
    - compact lanes: 0 < s < d/2
    - parallel lanes and hexagonal packing: s >= d/2
    - touch and run: s/d >= 1/sqrt(3)
    """

    def __init__(self, config: Optional[ValidationConfig] = None):
        self.config = config or ValidationConfig()

    def validate_horizon(self, T: float) -> Check:
        if not math.isfinite(T):
            return False, "T must be finite"
        if T <= 0:
            return False, "T > 0"
        if T > self.config.max_horizon:
            return False, f"T <= {self.config.max_horizon:g}"
        return True, None

    def validate_compact(self, p: SwarmParams) -> Check:
        if p.s <= 0:
            return False, "0 < s (use the point-target model for s = 0)"
        if p.s >= p.d / 2:
            return False, "s < d/2 (use parallel lanes for s >= d/2)"
        return True, None

    def validate_wide_target(self, p: SwarmParams) -> Check:
        if p.s < p.d / 2:
            return False, "s >= d/2 (use compact lanes for smaller targets)"
        return True, None

    def validate_touch_run(self, p: SwarmParams) -> Check:
        if p.s * math.sqrt(3) < p.d * (1 - 1e-12):
            return False, "u = s/d >= 1/sqrt(3)"
        return True, None

    def validate_approach_angle(self, theta: float) -> Check:
        if not math.isfinite(theta):
            return False, "theta must be finite"
        if abs(theta) >= math.pi - self.config.angle_tolerance:
            return False, "theta in [0, pi): robots face each other exactly"
        return True, None

    def validate_packing_angle(self, theta: float) -> Check:
        if not (0 <= theta < math.pi / 3):
            return False, "theta in [0, pi/3)"
        return True, None


_default_validator = ParameterValidator()


def get_validator() -> ParameterValidator:
    return _default_validator


def require(check: Check) -> None:
    """Raise DomainError when a check failed."""
    ok, message = check
    if not ok:
        raise DomainError(f"precondition violated: {message}", precondition=message)
