"""
Tests for the figure data builders at quick scale.
"""

import math

import pytest

from src.analysis import figures
from src.analysis.figures import SCALES


@pytest.fixture
def quick():
    return SCALES["quick"]


def test_every_figure_is_registered():
    assert len(figures.FIGURES) == 15
    assert {"tppar", "tphex", "tpit", "fhfpLarge", "comphexpar"} <= set(figures.FIGURES)


def test_unknown_figure(quick):
    with pytest.raises(KeyError):
        figures.build_figure("nope", quick)


def test_hex_limits(quick):
    table = figures.build_figure("limitshexpack", quick)["limitshexpack"]
    assert table.row_count == quick.u_points
    assert table.columns == ["u", "f_p", "f_h_min", "f_h_max"]


def test_hex_convergence_table(quick):
    table = figures.build_figure("tphex", quick)["tphex"]
    # horizons 1, 2, 5, ... 200 for four angles and two targets
    assert table.row_count == 8 * 4 * 2
    last = table.rows[-1]
    assert last["T"] == 200.0
    assert last["f_low"] < last["f_high"] <= last["f_upper"] + 1e-12


def test_compact_runs_match_closed_form(quick):
    tables = figures.build_figure("results1qw", quick)
    assert set(tables) == {"results1qw_s0.3", "results1qw_s0.45"}
    for table in tables.values():
        for row in table.rows[1:]:
            assert row["f_sim"] == pytest.approx(row["f_analytic"])


def test_write_point_delay(tmp_path, quick):
    paths = figures.write_figure("pointdelay", tmp_path, quick)
    assert paths == [tmp_path / "pointdelay.csv"]
    lines = paths[0].read_text().splitlines()
    assert lines[0] == "theta,delay_ratio"
    assert len(lines) == quick.theta_samples + 1
    assert float(lines[-1].split(",")[0]) < 2 * math.pi / 3


def test_lane_count_curve_skips_domain_edge(quick):
    table = figures.build_figure("grafKthroughput", quick)["grafKthroughput"]
    # no lane count has a positive turning radius at u = 1/sqrt(3)
    assert table.row_count == quick.u_points - 1
    assert table.rows[0]["u"] > 1 / math.sqrt(3)
