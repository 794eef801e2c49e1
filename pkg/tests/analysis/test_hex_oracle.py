"""
Tests for the brute-force lattice oracle and its agreement with the closed form.
"""

import math

import numpy as np
import pytest

from src.analysis import hex_oracle
from src.core.errors import OracleMismatch
from src.core.model import SwarmParams
from src.strategies import hex_packing
from src.strategies.hex_packing import HexConfig


def test_regions_are_disjoint(unit_params):
    _, _, X, Y = hex_oracle.lattice_box(0.3, unit_params, -5.0, 30.0, -6.0, 6.0)
    rect, cap = hex_oracle.region_masks(X, Y, 15.0, unit_params)
    assert not np.any(rect & cap)
    assert rect.sum() > 0 and cap.sum() > 0


def test_enumeration_is_consistent(unit_params):
    cfg = HexConfig(theta=0.4)
    points = hex_oracle.enumerate_region(9.0, cfg, unit_params)
    assert len(points) == hex_oracle.count(9.0, cfg, unit_params)
    assert sum(hex_oracle.count_parts(9.0, cfg, unit_params)) == len(points)
    assert any(p.x_h == 0 and p.y_h == 0 for p in points)


def test_region_points_accept_any_rotation(unit_params):
    X, Y = hex_oracle.region_points(10.0, 1.3, unit_params)
    assert X.size == hex_oracle.count_for_angle(10.0, 1.3, unit_params)
    assert np.all(np.abs(Y) <= unit_params.s + 1e-9)


def test_random_cases_are_seeded():
    first = hex_oracle.random_cases(5, seed=1)
    assert first == hex_oracle.random_cases(5, seed=1)
    assert first != hex_oracle.random_cases(5, seed=2)
    for case in first:
        assert 0.5 <= case.s <= 10.0
        assert 0.0 <= case.theta < math.pi / 3
        assert 0.0 < case.T <= 50.0


def test_random_cases_reach_long_windows():
    cases = hex_oracle.random_cases(20, seed=5, t_max=1e4)
    assert all(0.0 < case.T <= 1e4 for case in cases)
    assert max(case.T for case in cases) > 1000.0
    assert [c.theta for c in cases] == [c.theta for c in hex_oracle.random_cases(20, seed=5)]


def test_closed_form_matches_enumeration():
    cases = hex_oracle.random_cases(200, seed=11)
    assert hex_oracle.verify(cases) == []



def test_closed_form_matches_enumeration_on_long_windows():
    cases = hex_oracle.random_cases(20, seed=13, t_max=1e4)
    assert hex_oracle.verify(cases) == []

@pytest.mark.slow
def test_closed_form_matches_enumeration_thousand_cases():
    cases = hex_oracle.random_cases(1000, seed=7)
    assert hex_oracle.verify(cases, jobs=2) == []


def test_closed_form_matches_scaled_units():
    cases = hex_oracle.random_cases(50, seed=3, d=0.4, v=2.5)
    assert hex_oracle.verify(cases) == []


def test_mismatch_is_reported(monkeypatch, unit_params):
    monkeypatch.setattr(hex_packing, "robots_arrived", lambda T, cfg, p: -1)
    with pytest.raises(OracleMismatch) as info:
        hex_oracle.assert_matches(5.0, HexConfig(theta=0.0), unit_params)
    assert info.value.config["s"] == 3.0
    case = hex_oracle.OracleCase(s=3.0, theta=0.0, T=5.0)
    assert hex_oracle.check_case(case)["closed_form"] == -1


def test_case_params():
    case = hex_oracle.OracleCase(s=2.0, theta=0.1, T=4.0, v=0.5, d=0.8)
    assert case.params == SwarmParams(v=0.5, d=0.8, s=2.0)


@pytest.mark.parametrize("theta", [0.1, 0.5, math.pi / 6])
@pytest.mark.parametrize("T", [5.3, 17.9])
def test_sixty_degree_rotation_changes_nothing(unit_params, theta, T):
    count = hex_oracle.count_for_angle(T, theta, unit_params)
    assert hex_oracle.count_for_angle(T, theta + math.pi / 3, unit_params) == count


@pytest.mark.parametrize("theta", [0.0, 0.35, math.pi / 6])
def test_region_robots_keep_spacing(theta):
    p = SwarmParams(d=1.2, s=3.0)
    X, Y = hex_oracle.region_points(12.0, theta, p)
    dist = np.hypot(X[:, None] - X[None, :], Y[:, None] - Y[None, :])
    np.fill_diagonal(dist, np.inf)
    assert dist.min() == pytest.approx(1.2)
    assert np.all(dist >= 1.2 - 1e-9)


def test_long_box_keeps_band_edge_rows(unit_params):
    # columns 0 .. 11543 alternate between seven and six rows on |y| <= 3
    I, _, _, Y = hex_oracle.lattice_box(math.pi / 6, unit_params, 3.0, 1e4, -3.0, 3.0)
    assert I.size == 75036
    assert np.count_nonzero(np.abs(Y) == 3.0) == 2 * 5772
