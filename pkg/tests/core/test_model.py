"""
Tests for parameter models and the two throughput definitions.
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from src.core.errors import DomainError
from src.core.model import (
    SwarmParams,
    ThroughputSample,
    ThroughputSeries,
    mean_interarrival_throughput,
    ratio_u,
    throughput_from_arrivals,
)


class TestSwarmParams:
    def test_defaults(self):
        p = SwarmParams()
        assert (p.v, p.d, p.s) == (1.0, 1.0, 0.0)

    def test_u_is_s_over_d(self):
        assert SwarmParams(v=1.0, d=2.0, s=3.0).u == 1.5
        assert ratio_u(SwarmParams(d=4.0, s=1.0)).u == 0.25

    @pytest.mark.parametrize("field", ["v", "d"])
    def test_rejects_non_positive(self, field):
        with pytest.raises(ValidationError):
            SwarmParams(**{field: 0.0})

    def test_rejects_negative_radius(self):
        with pytest.raises(ValidationError):
            SwarmParams(s=-0.1)

    def test_rejects_infinite(self):
        with pytest.raises(ValidationError):
            SwarmParams(s=math.inf)

    def test_frozen(self):
        p = SwarmParams(s=1.0)
        with pytest.raises(ValidationError):
            p.s = 2.0

    def test_with_speed(self):
        p = SwarmParams(v=1.0, d=1.0, s=3.0).with_speed(0.1)
        assert (p.v, p.d, p.s) == (0.1, 1.0, 3.0)


class TestThroughputFromArrivals:
    def test_shifts_to_first_arrival(self):
        series = throughput_from_arrivals([5.0, 6.0, 7.0])
        assert series.times() == [0.0, 1.0, 2.0]
        assert series.samples[0].f is None
        assert series.final.n == 3
        assert series.final.f == 1.0

    def test_simultaneous_arrivals_collapse(self):
        series = throughput_from_arrivals([0.0, 0.0, 1.0, 1.0])
        assert [(s.t, s.n) for s in series.samples] == [(0.0, 2), (1.0, 4)]
        assert series.final.f == 3.0

    def test_empty_log(self):
        with pytest.raises(DomainError):
            throughput_from_arrivals([])

    def test_unsorted_log(self):
        with pytest.raises(DomainError, match="not sorted"):
            throughput_from_arrivals([1.0, 0.5])

    def test_csv(self):
        text = throughput_from_arrivals([0.0, 0.5]).to_csv()
        assert text == "t,n,f\n0.0,1,\n0.5,2,2.0\n"


class TestInterarrival:
    def test_mean_gap(self):
        assert mean_interarrival_throughput([0.0, 1.0, 3.0]) == pytest.approx(2 / 3)

    def test_single_arrival(self):
        with pytest.raises(DomainError):
            mean_interarrival_throughput([1.0])

    def test_all_simultaneous(self):
        with pytest.raises(DomainError, match="simultaneous"):
            mean_interarrival_throughput([2.0, 2.0, 2.0])

    @given(st.lists(st.integers(min_value=0, max_value=10_000), min_size=2, max_size=60))
    def test_both_definitions_agree(self, raw):
        arrivals = sorted(float(x) for x in raw)
        if arrivals[-1] == arrivals[0]:
            return
        window = throughput_from_arrivals(arrivals).final.f
        assert window == pytest.approx(mean_interarrival_throughput(arrivals), rel=1e-12)


class TestSeries:
    def test_rejects_decreasing_times(self):
        with pytest.raises(ValidationError):
            ThroughputSeries(
                samples=[ThroughputSample(t=1.0, n=2, f=1.0), ThroughputSample(t=0.5, n=3, f=4.0)]
            )

    def test_rejects_inconsistent_f(self):
        with pytest.raises(ValidationError):
            ThroughputSeries(samples=[ThroughputSample(t=2.0, n=3, f=5.0)])
