"""
Settings
Experiment defaults from YAML plus runtime settings from the environment.

Precedence, lowest first: built-in defaults, config/defaults.yaml (or the file
named by STL_CONFIG_PATH), .env, process environment, CLI flags.
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "defaults.yaml"


class ExperimentDefaults(BaseModel):
    """Defaults for parameters the CLI does not receive explicitly."""

    d: float = Field(default=1.0, gt=0)
    lane_speed: float = Field(default=1.0, gt=0)
    touch_run_speed: float = Field(default=0.1, gt=0)
    dt: float = Field(default=0.1, gt=0)
    n_robots: int = Field(default=200, ge=2)
    decimals: int = Field(default=13, ge=1, le=15)
    edge_tolerance: float = Field(default=0.001, gt=0, lt=0.5)
    theta_samples: int = Field(default=1000, ge=2)
    omega_max: float = Field(default=1.5707963267948966, gt=0)


class LabSettings(BaseSettings):
    """Runtime settings, overridable with STL_* environment variables."""

    model_config = SettingsConfigDict(env_prefix="STL_", extra="ignore")

    jobs: int = Field(default=1, ge=1)
    log_level: str = Field(default="WARNING")
    log_file: Optional[str] = None
    output_dir: str = Field(default="results")
    config_path: Optional[str] = None


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    with open(path) as f:
        return yaml.safe_load(f) or {}


def load_config(config_path: Optional[str] = None) -> tuple[LabSettings, ExperimentDefaults]:
    """Load runtime settings and experiment defaults."""
    load_dotenv()

    path = Path(config_path or os.getenv("STL_CONFIG_PATH") or DEFAULT_CONFIG_PATH)
    yaml_config = _read_yaml(path)

    swarm = yaml_config.get("swarm", {})
    simulation = yaml_config.get("simulation", {})
    numerics = yaml_config.get("numerics", {})
    search = yaml_config.get("search", {})
    runtime = yaml_config.get("runtime", {})

    defaults = ExperimentDefaults(
        **{
            k: v
            for k, v in {
                "d": swarm.get("d"),
                "lane_speed": swarm.get("lane_speed"),
                "touch_run_speed": swarm.get("touch_run_speed"),
                "dt": simulation.get("dt"),
                "n_robots": simulation.get("n_robots"),
                "decimals": numerics.get("decimals"),
                "edge_tolerance": numerics.get("edge_tolerance"),
                "theta_samples": search.get("theta_samples"),
                "omega_max": search.get("omega_max"),
            }.items()
            if v is not None
        }
    )

    # environment wins over YAML; BaseSettings reads STL_* itself
    yaml_runtime = {k: v for k, v in runtime.items() if f"STL_{k.upper()}" not in os.environ}
    settings = LabSettings(**yaml_runtime)

    return settings, defaults


@lru_cache(maxsize=1)
def get_defaults() -> ExperimentDefaults:
    return load_config()[1]
