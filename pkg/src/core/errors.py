"""
Error hierarchy for the throughput lab.

Every precondition failure raised by a formula or a layout is a DomainError
naming the precondition that failed. The CLI maps it to exit code 1.
"""

from typing import Optional


class ThroughputLabError(Exception):
    """Base class for all lab errors."""


class DomainError(ThroughputLabError, ValueError):
    """A formula was called outside the parameter domain it is defined on."""

    def __init__(self, message: str, precondition: Optional[str] = None):
        super().__init__(message)
        self.precondition = precondition or message

    def __str__(self) -> str:
        base = super().__str__()
        if self.precondition and self.precondition != base:
            return f"{base} (precondition: {self.precondition})"
        return base


class SimulationError(ThroughputLabError, RuntimeError):
    """The kinematic simulator did not terminate or violated its distance audit."""

    def __init__(self, message: str, diagnostic: Optional[dict] = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class OracleMismatch(ThroughputLabError, AssertionError):
    """A closed-form count disagreed with the brute-force enumeration."""

    def __init__(self, message: str, config: Optional[dict] = None):
        super().__init__(message)
        self.config = config or {}
