"""
Output Writers
CSV tables and run manifests.

CSV is UTF-8 with LF line endings; floats are written with repr so files
round-trip exactly and repeat byte for byte. Missing values are blank.
"""

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from .. import __version__


class ResultTable(BaseModel):
    """Column-ordered result rows."""

    columns: List[str]
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    message: Optional[str] = None

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None
    ) -> "ResultTable":
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        return cls(columns=columns, rows=list(rows))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row.get(column)) for column in self.columns])
        return buffer.getvalue()

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.to_csv())
        return path


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class OutputRecord(BaseModel):
    path: str
    sha256: str


class RunManifest(BaseModel):
    """Everything needed to regenerate a command's outputs."""

    command: str
    argv: List[str]
    parameters: Dict[str, Any] = Field(default_factory=dict)
    version: str = __version__
    outputs: List[OutputRecord] = Field(default_factory=list)
    duration_s: float = Field(default=0.0, ge=0)

    def add_output(self, path: Path) -> None:
        self.outputs.append(OutputRecord(path=str(path), sha256=file_digest(path)))

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps(self.model_dump(), indent=2, sort_keys=True) + "\n"
        path.write_text(text, encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def changed_outputs(self) -> List[str]:
        """Recorded outputs whose current content no longer matches the manifest."""
        changed = []
        for record in self.outputs:
            current = Path(record.path)
            if not current.exists() or file_digest(current) != record.sha256:
                changed.append(record.path)
        return changed


def manifest_path(output: Path) -> Path:
    """Manifest location for an output file or directory."""
    output = Path(output)
    if output.suffix:
        return output.with_suffix(output.suffix + ".manifest.json")
    return output / "manifest.json"
