"""
Tests for touch-and-run lane geometry and counts.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.errors import DomainError
from src.core.model import SwarmParams
from src.simulation.paths import lane_point
from src.strategies import touch_run
from src.strategies.touch_run import TouchRunStrategy


class TestDomain:
    @pytest.mark.parametrize("s, k_max", [(3.0, 18), (6.0, 37), (0.6, 3)])
    def test_lane_limit(self, s, k_max):
        assert touch_run.lane_domain(SwarmParams(s=s)) == (3, k_max)

    def test_target_too_small(self):
        with pytest.raises(DomainError):
            touch_run.lane_domain(SwarmParams(s=0.55))

    @pytest.mark.parametrize("K", [2, 19])
    def test_lane_count_outside_domain(self, unit_params, K):
        with pytest.raises(DomainError):
            touch_run.build_config(K, unit_params)

    def test_zero_radius_rejected(self):
        with pytest.raises(DomainError, match="turning radius"):
            touch_run.build_config(3, SwarmParams(s=1 / math.sqrt(3)))

    @given(st.floats(min_value=0.6, max_value=50.0))
    def test_radius_non_negative_across_domain(self, s):
        p = SwarmParams(s=s)
        low, high = touch_run.lane_domain(p)
        for K in (low, high):
            assert touch_run.turning_radius(K, p) >= -1e-12


class TestConfig:
    def test_ten_lanes_on_radius_three(self, slow_params):
        cfg = touch_run.build_config(10, slow_params)
        assert cfg.alpha == pytest.approx(math.pi / 5)
        assert cfg.r == pytest.approx((math.sqrt(5) - 1) / 2)
        assert cfg.d_prime == pytest.approx(1.1649666, rel=1e-6)
        assert cfg.d_o == cfg.d_prime
        assert cfg.omega == pytest.approx(0.1 / cfg.r)

    def test_counts_come_in_waves(self, slow_params):
        cfg = touch_run.build_config(10, slow_params)
        assert touch_run.robots_arrived(10, 0.0, slow_params) == 10
        wave = cfg.d_o / slow_params.v
        assert touch_run.robots_arrived(10, 0.99 * wave, slow_params) == 10
        assert touch_run.robots_arrived(10, wave, slow_params) == 20

    def test_asymptotic(self, slow_params):
        assert touch_run.asymptotic(10, slow_params) == pytest.approx(0.858394, rel=1e-5)
        strategy = TouchRunStrategy(slow_params, 10)
        assert strategy.throughput_at(1e5) == pytest.approx(strategy.asymptotic(), rel=1e-3)


class TestLaneScan:
    @pytest.mark.parametrize("s, limit", [(3.0, 16), (6.0, 33)])
    def test_turning_rate_limit(self, s, limit, omega_max):
        p = SwarmParams(v=0.1, s=s)
        assert touch_run.feasible_max(p, omega_max) == limit

    def test_scan_rows(self, slow_params, omega_max):
        rows = touch_run.scan_k(slow_params, omega_max)
        assert [K for K, _, _ in rows] == list(range(3, 19))
        assert [K for K, _, ok in rows if ok] == list(range(3, 17))

    def test_best_lane_count(self, slow_params, omega_max):
        K, f = touch_run.best_K(slow_params, omega_max)
        feasible = [(k, g) for k, g, ok in touch_run.scan_k(slow_params, omega_max) if ok]
        assert f == max(g for _, g in feasible)
        assert K == min(k for k, g in feasible if g == f)

    def test_no_feasible_lane_count(self, slow_params):
        with pytest.raises(DomainError):
            touch_run.best_K(slow_params, omega_max=1e-3)


class TestGeometry:
    @pytest.fixture
    def layout(self, slow_params):
        cfg = touch_run.build_config(10, slow_params)
        return cfg, [touch_run.lane_geometry(cfg, lane, slow_params) for lane in range(10)]

    def test_arc_grazes_target(self, layout, slow_params):
        cfg, lanes = layout
        for lane in lanes:
            assert np.hypot(*lane.arc_centre) == pytest.approx(cfg.r + slow_params.s)
            assert np.hypot(*lane.tangent_point) == pytest.approx(slow_params.s)
            for point in (lane.turn_start, lane.turn_end):
                distance = math.dist(point, lane.arc_centre)
                assert distance == pytest.approx(cfg.r)
            assert lane.arc_sweep == pytest.approx(math.pi - cfg.alpha)

    def test_straight_legs_keep_half_d_from_boundary(self, layout, slow_params):
        cfg, lanes = layout
        for lane in lanes:
            boundary = lane.bisector + cfg.alpha / 2
            x, y = lane.turn_start
            offset = abs(math.cos(boundary) * y - math.sin(boundary) * x)
            assert offset == pytest.approx(slow_params.d / 2)

    def test_path_is_continuous(self, layout):
        cfg, lanes = layout
        half_arc = cfg.r * (math.pi - cfg.alpha) / 2
        for lane in lanes:
            assert lane_point(cfg, lane, -half_arc) == pytest.approx(lane.turn_start)
            assert lane_point(cfg, lane, 0.0) == pytest.approx(lane.tangent_point)
            assert lane_point(cfg, lane, half_arc) == pytest.approx(lane.turn_end)

    def test_turn_starts_at_d_r_for_four_lanes(self):
        p = SwarmParams(s=3.0)
        cfg = touch_run.build_config(4, p)
        assert cfg.r == pytest.approx(5.535533906, abs=1e-8)
        assert cfg.d_r == pytest.approx(6.0562, abs=1e-4)
        lane = touch_run.lane_geometry(cfg, 0, p)
        assert math.hypot(*lane.turn_start) == pytest.approx(cfg.d_r)
        assert math.hypot(*lane.turn_end) == pytest.approx(cfg.d_r)

    def test_sampled_path_touches_target_once(self, layout, slow_params):
        cfg, lanes = layout
        half_arc = cfg.r * (math.pi - cfg.alpha) / 2
        sigmas = np.linspace(-half_arc - 5, half_arc + 5, 2001)
        for lane in lanes:
            points = np.array([lane_point(cfg, lane, sigma) for sigma in sigmas])
            assert np.hypot(points[:, 0], points[:, 1]).min() >= slow_params.s - 1e-9
            assert abs(math.hypot(*lane_point(cfg, lane, 0.0)) - slow_params.s) <= 1e-9
