"""
Tests for CSV tables, run manifests and structured run logging.
"""

import json
from pathlib import Path

from src.core.errors import DomainError, SimulationError
from src.core.logging_config import RunLogger, setup_logging
from src.core.output import ResultTable, RunManifest, format_value, manifest_path


class TestResultTable:
    def test_csv_formatting(self):
        table = ResultTable.from_rows([{"a": 1.5, "b": None, "c": True, "d": 3}])
        assert table.columns == ["a", "b", "c", "d"]
        assert table.to_csv() == "a,b,c,d\n1.5,,true,3\n"

    def test_explicit_columns_and_missing_keys(self):
        table = ResultTable.from_rows([{"x": 0.1}], ["x", "y"])
        assert table.to_csv() == "x,y\n0.1,\n"
        assert table.row_count == 1

    def test_floats_round_trip(self):
        assert float(format_value(0.1 + 0.2)) == 0.1 + 0.2
        assert format_value(False) == "false"

    def test_write_creates_parents(self, tmp_path):
        path = ResultTable.from_rows([{"k": 1}]).write(tmp_path / "deep" / "t.csv")
        assert path.read_text() == "k\n1\n"


class TestManifest:
    def test_write_and_load(self, tmp_path):
        out = ResultTable.from_rows([{"k": 1}]).write(tmp_path / "t.csv")
        manifest = RunManifest(command="compare", argv=["compare", "--points", "3"])
        manifest.add_output(out)
        target = manifest.write(manifest_path(out))
        assert target == tmp_path / "t.csv.manifest.json"
        loaded = RunManifest.load(target)
        assert loaded.argv == ["compare", "--points", "3"]
        assert loaded.changed_outputs() == []

    def test_detects_changed_output(self, tmp_path):
        out = ResultTable.from_rows([{"k": 1}]).write(tmp_path / "t.csv")
        manifest = RunManifest(command="compare", argv=[])
        manifest.add_output(out)
        out.write_text("k\n2\n")
        assert manifest.changed_outputs() == [str(out)]

    def test_directory_manifest(self):
        assert manifest_path(Path("results")) == Path("results/manifest.json")


class TestErrors:
    def test_domain_error_names_precondition(self):
        error = DomainError("bad input", precondition="s >= d/2")
        assert error.precondition == "s >= d/2"
        assert str(error) == "bad input (precondition: s >= d/2)"
        assert isinstance(error, ValueError)

    def test_simulation_error_diagnostic(self):
        assert SimulationError("stuck").diagnostic == {}


class TestRunLogger:
    def test_records_events(self):
        run_logger = RunLogger("simulate")
        run_logger.log_run_started({"s": 3.0})
        run_logger.log_domain_error("s >= d/2")
        assert [e["event"] for e in run_logger.events] == ["run_started", "domain_error"]

    def test_json_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.jsonl"
        setup_logging("INFO", str(log_file), console_logging=False)
        RunLogger("compare").log_run_completed(1.25, ["out.csv"])
        lines = log_file.read_text().strip().splitlines()
        record = json.loads(lines[-1])
        assert record["event"] == "run_completed"
        assert record["command"] == "compare"
        assert record["outputs"] == ["out.csv"]
