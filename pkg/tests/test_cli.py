"""
Tests for the stl command-line interface.
"""

import json
import math

import pytest

from src.cli import EXIT_FAILURE, EXIT_OK, main


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    for name in ("STL_JOBS", "STL_LOG_FILE", "STL_LOG_LEVEL", "STL_CONFIG_PATH"):
        monkeypatch.delenv(name, raising=False)


class TestParser:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["--version"])
        assert info.value.code == 0
        assert "stl" in capsys.readouterr().out

    def test_help_lists_examples(self, capsys):
        with pytest.raises(SystemExit):
            main(["--help"])
        out = capsys.readouterr().out
        assert "Examples:" in out
        assert "oracle-check" in out

    def test_missing_arguments_exit_2(self):
        with pytest.raises(SystemExit) as info:
            main(["simulate"])
        assert info.value.code == 2

    def test_bad_jobs(self):
        with pytest.raises(SystemExit) as info:
            main(["--jobs", "0", "oracle-check", "hex", "--samples", "1"])
        assert info.value.code == 2


class TestThroughput:
    def test_parallel_series(self, capsys):
        code = main(["throughput", "parallel", "--s", "3", "--t-max", "1", "--dt", "0.5"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "t,f_analytic,f_asymptotic"
        assert len(lines) == 3
        assert lines[-1].endswith(",7.0")

    def test_hex_series_reports_limit_interval(self, capsys):
        code = main(["throughput", "hex", "--s", "3", "--t-max", "1", "--dt", "0.5"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "t,f_analytic,f_low,f_high"
        assert len(lines) == 3

    def test_domain_error_exit_1(self, capsys):
        code = main(["throughput", "compact", "--s", "0.7"])
        assert code == EXIT_FAILURE
        assert "precondition" in capsys.readouterr().err

    def test_invalid_parameters_exit_1(self, capsys):
        code = main(["throughput", "parallel", "--s", "3", "--v", "-1"])
        assert code == EXIT_FAILURE
        assert "invalid parameters" in capsys.readouterr().err

    def test_lane_scan(self, capsys):
        code = main(
            ["--deg", "throughput", "touchrun", "--s", "3", "--scan-k", "--omega-max", "90"]
        )
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "k,f_asymptotic,feasible"
        assert len(lines) == 1 + 16
        assert lines[14].startswith("16,") and lines[14].endswith(",true")
        assert lines[15].startswith("17,") and lines[15].endswith(",false")

    def test_lane_scan_uses_configured_turning_limit(self, capsys):
        assert main(["throughput", "touchrun", "--s", "3", "--scan-k"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[15].startswith("17,") and lines[15].endswith(",false")

        code = main(["throughput", "touchrun", "--s", "3", "--scan-k", "--no-omega-limit"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert all(line.endswith(",true") for line in lines[1:])

    def test_hex_breakdown_in_degrees(self, capsys):
        code = main(
            ["--deg", "throughput", "hex", "--s", "3", "--theta", "30", "--breakdown", "20"]
        )
        (breakdown,) = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert breakdown["theta"] == pytest.approx(math.pi / 6)
        assert breakdown["total"] == breakdown["rect_count"] + breakdown["semi_count"]

    def test_hex_breakdown_per_window(self, capsys):
        code = main(["throughput", "hex", "--s", "3", "--breakdown", "20", "10000"])
        breakdowns = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert [b["T"] for b in breakdowns] == [20.0, 10000.0]
        assert breakdowns[0]["total"] < breakdowns[1]["total"]

    def test_point_delay(self, capsys):
        code = main(["throughput", "point", "--samples", "3"])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[:2] == ["theta,delay_ratio", "0.0,1.0"]
        assert len(lines) == 4


class TestRuns:
    def test_simulate_writes_manifest_and_replays(self, tmp_path, capsys):
        out = tmp_path / "runs" / "compact.csv"
        code = main(
            ["simulate", "--strategy", "compact", "--s", "0.3", "--n", "10", "--out", str(out)]
        )
        assert code == EXIT_OK
        assert out.read_text().startswith("t,n,f\n0.0,1,\n")
        manifest = tmp_path / "runs" / "compact.csv.manifest.json"
        record = json.loads(manifest.read_text())
        assert record["command"] == "simulate"
        assert record["outputs"][0]["path"] == str(out)

        assert main(["replay", str(manifest)]) == EXIT_OK
        assert "reproduced 1 outputs" in capsys.readouterr().out

    def test_replay_detects_drift(self, tmp_path, capsys):
        out = tmp_path / "compact.csv"
        main(["simulate", "--strategy", "compact", "--s", "0.3", "--n", "5", "--out", str(out)])
        manifest = tmp_path / "compact.csv.manifest.json"
        record = json.loads(manifest.read_text())
        record["outputs"][0]["sha256"] = "0" * 64
        manifest.write_text(json.dumps(record))
        assert main(["replay", str(manifest)]) == EXIT_FAILURE
        assert "differs" in capsys.readouterr().err

    def test_touch_run_needs_lane_count(self, capsys):
        code = main(["simulate", "--strategy", "touchrun", "--s", "3"])
        assert code == EXIT_FAILURE
        assert "--k" in capsys.readouterr().err

    def test_simulate_trace(self, tmp_path):
        out = tmp_path / "hex.csv"
        trace = tmp_path / "trace.csv"
        code = main(
            ["simulate", "--strategy", "hex", "--s", "3", "--n", "10", "--out", str(out),
             "--trace", str(trace)]
        )
        assert code == EXIT_OK
        assert trace.read_text().splitlines()[0] == "t,robot_id,x,y,phase"

    def test_compare(self, tmp_path):
        out = tmp_path / "compare.csv"
        code = main(
            ["compare", "--u-min", "0", "--u-max", "3", "--points", "4", "--t", "100",
             "--theta-samples", "6", "--out", str(out)]
        )
        lines = out.read_text().splitlines()
        assert code == EXIT_OK
        assert lines[0] == "u,f_p,f_h_min,f_h_max,f_h_T,f_t_T,f_t_asym"
        assert lines[1] == "0.0,,,,,,"
        assert len(lines) == 5

    def test_oracle_check(self, capsys):
        assert main(["oracle-check", "hex", "--samples", "20", "--seed", "3"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "20/20 OK"

    def test_oracle_check_long_windows(self, capsys):
        code = main(["oracle-check", "hex", "--samples", "5", "--seed", "3", "--t-max", "1000"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "5/5 OK"

    def test_figures(self, tmp_path):
        code = main(["figures", "--fig", "pointdelay", "--out-dir", str(tmp_path), "--quick"])
        assert code == EXIT_OK
        assert (tmp_path / "pointdelay.csv").exists()
        assert (tmp_path / "manifest.json").exists()
