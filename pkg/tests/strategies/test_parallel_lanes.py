"""
Tests for parallel lanes (s >= d/2).
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.core.model import SwarmParams
from src.strategies import parallel_lanes
from src.strategies.parallel_lanes import ParallelLanesStrategy


class TestLayout:
    def test_lane_count_and_first_lane(self, unit_params):
        lanes = parallel_lanes.layout(unit_params)
        assert lanes.lanes == 7
        assert lanes.J == 4
        assert lanes.d_first == 0.0
        assert lanes.d_extra[0] == pytest.approx(3.0)
        assert lanes.d_extra[1] == pytest.approx(3 - math.sqrt(5))

    def test_half_d_target(self):
        lanes = parallel_lanes.layout(SwarmParams(s=0.5))
        assert lanes.lanes == 2
        assert lanes.J == 1
        assert lanes.d_first == pytest.approx(0.5)

    def test_domain(self):
        with pytest.raises(DomainError):
            parallel_lanes.layout(SwarmParams(s=0.4))


class TestCounts:
    def test_only_first_lane_at_zero(self, unit_params):
        assert parallel_lanes.robots_arrived(0.0, unit_params) == 1

    def test_all_lanes_after_warm_up(self, unit_params):
        # lane robots: 101 in the middle, 100 on the next four, 98 on the edge lanes
        assert parallel_lanes.robots_arrived(100.0, unit_params) == 697
        assert parallel_lanes.throughput_at(100.0, unit_params) == pytest.approx(6.96)

    def test_lane_index_bounds(self, unit_params):
        with pytest.raises(DomainError):
            parallel_lanes.robots_in_lane(0, 1.0, unit_params)
        with pytest.raises(DomainError):
            parallel_lanes.robots_in_lane(8, 1.0, unit_params)

    @pytest.mark.parametrize("s, limit", [(0.5, 2.0), (3.0, 7.0), (6.0, 13.0), (3.4, 7.0)])
    def test_asymptotic(self, s, limit):
        assert parallel_lanes.asymptotic(SwarmParams(s=s)) == limit

    @given(
        s=st.floats(min_value=0.5, max_value=8.0),
        t1=st.floats(min_value=0.0, max_value=60.0),
        t2=st.floats(min_value=0.0, max_value=60.0),
    )
    def test_count_is_monotone(self, s, t1, t2):
        p = SwarmParams(s=s)
        lo, hi = sorted((t1, t2))
        assert parallel_lanes.robots_arrived(lo, p) <= parallel_lanes.robots_arrived(hi, p)

    @given(
        s=st.floats(min_value=0.5, max_value=6.0),
        d=st.floats(min_value=0.3, max_value=2.0),
        v=st.floats(min_value=0.1, max_value=3.0),
        T=st.floats(min_value=0.0, max_value=40.0),
    )
    def test_count_matches_robot_placement(self, s, d, v, T):
        assume(s >= d / 2)
        p = SwarmParams(v=v, d=d, s=s)
        # robot k of a lane at height y starts at x = s + k d and touches the circle at
        # x = sqrt(s^2 - y^2)
        heights = [s - i * d for i in range(int(2 * s / d) + 2) if round(2 * s - i * d, 12) >= 0]
        extra = [s - math.sqrt(max(s * s - y * y, 0.0)) for y in heights]
        first = min(extra)
        k = np.arange(int(v * T / d) + 3)
        count = sum(int(np.sum(np.round(k * d + e - first - v * T, 12) <= 0)) for e in extra)
        assert parallel_lanes.robots_arrived(T, p) == count


def test_strategy_converges(unit_params):
    strategy = ParallelLanesStrategy(unit_params)
    assert strategy.throughput_at(1e4) == pytest.approx(7.0, abs=1e-3)
    assert strategy.asymptotic() == 7.0
