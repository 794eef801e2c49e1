"""
Core Model
Shared parameter and result types plus the two throughput definitions.

Throughput is measured from the first arrival at the target region:
- interval form: inverse of the mean time between consecutive arrivals
- window form: (N - 1) / T for N arrivals within a window T after the first one
Both forms give the same number for the same arrival log.
"""

import csv
import io
import math
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import DomainError


class SwarmParams(BaseModel):
    """The (v, d, s) triple every throughput formula consumes."""

    model_config = ConfigDict(frozen=True)

    v: float = Field(default=1.0, gt=0, description="Linear speed (m/s)")
    d: float = Field(default=1.0, gt=0, description="Minimum inter-robot distance (m)")
    s: float = Field(default=0.0, ge=0, description="Target-region radius (m)")

    @field_validator("v", "d", "s")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @property
    def u(self) -> float:
        return ratio_u(self).u

    def with_speed(self, v: float) -> "SwarmParams":
        return SwarmParams(v=v, d=self.d, s=self.s)


class RatioU(BaseModel):
    """Dimensionless target size u = s / d."""

    model_config = ConfigDict(frozen=True)

    u: float = Field(ge=0)


def ratio_u(p: SwarmParams) -> RatioU:
    return RatioU(u=p.s / p.d)


class ThroughputSample(BaseModel):
    """One (t, n, f) point; f is absent at t = 0."""

    model_config = ConfigDict(frozen=True)

    t: float = Field(ge=0)
    n: int = Field(ge=1)
    f: Optional[float] = None


class ThroughputSeries(BaseModel):
    """Ordered throughput samples from an analytic evaluation or a simulated run."""

    model_config = ConfigDict(frozen=True)

    samples: List[ThroughputSample] = Field(default_factory=list)

    @field_validator("samples")
    @classmethod
    def _ordered(cls, samples: List[ThroughputSample]) -> List[ThroughputSample]:
        for prev, cur in zip(samples, samples[1:]):
            if cur.t <= prev.t:
                raise ValueError("sample times must be strictly increasing")
            if cur.n < prev.n:
                raise ValueError("arrival counts must be non-decreasing")
        for sample in samples:
            if sample.t > 0 and sample.f is not None:
                if not math.isclose(sample.f, (sample.n - 1) / sample.t, rel_tol=1e-12):
                    raise ValueError("f must equal (n - 1) / t")
        return samples

    @property
    def final(self) -> ThroughputSample:
        return self.samples[-1]

    def times(self) -> List[float]:
        return [sample.t for sample in self.samples]

    def to_csv(self) -> str:
        """CSV with header t,n,f; f is blank on rows without a value."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["t", "n", "f"])
        for sample in self.samples:
            writer.writerow([repr(sample.t), sample.n, "" if sample.f is None else repr(sample.f)])
        return buffer.getvalue()


def _check_sorted(arrival_times: Sequence[float]) -> None:
    if len(arrival_times) == 0:
        raise DomainError("arrival log is empty", precondition="non-empty arrival list")
    for prev, cur in zip(arrival_times, arrival_times[1:]):
        if cur < prev:
            raise DomainError("arrival log is not sorted", precondition="sorted arrival list")


def throughput_from_arrivals(arrival_times: Sequence[float]) -> ThroughputSeries:
    """
    Build the window-form series from an arrival log.

    Times are shifted so the first arrival is t = 0. Arrivals sharing one
    instant collapse into a single sample carrying the cumulative count, so the
    t = 0 row counts every robot that arrived together with the first one.
    """
    _check_sorted(arrival_times)
    origin = arrival_times[0]
    samples: List[ThroughputSample] = []
    for index, raw in enumerate(arrival_times, start=1):
        t = raw - origin
        if samples and samples[-1].t == t:
            samples[-1] = _sample(t, index)
        else:
            samples.append(_sample(t, index))
    return ThroughputSeries(samples=samples)


def _sample(t: float, n: int) -> ThroughputSample:
    return ThroughputSample(t=t, n=n, f=(n - 1) / t if t > 0 else None)


def mean_interarrival_throughput(arrival_times: Sequence[float]) -> float:
    """Interval form: 1 / mean(consecutive gaps)."""
    _check_sorted(arrival_times)
    if len(arrival_times) < 2:
        raise DomainError("need at least two arrivals", precondition=">= 2 arrivals")
    gaps = [b - a for a, b in zip(arrival_times, arrival_times[1:])]
    total = math.fsum(gaps)
    if total <= 0:
        raise DomainError("all arrivals are simultaneous", precondition="positive span")
    return len(gaps) / total

