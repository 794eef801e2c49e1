"""
Tests for YAML and environment configuration.
"""

import pytest

from src.core.settings import ExperimentDefaults, load_config


@pytest.fixture
def clean_env(monkeypatch):
    for name in ("STL_JOBS", "STL_LOG_LEVEL", "STL_OUTPUT_DIR", "STL_CONFIG_PATH"):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_bundled_defaults(clean_env):
    settings, defaults = load_config()
    assert defaults.d == 1.0
    assert defaults.touch_run_speed == 0.1
    assert defaults.dt == 0.1
    assert defaults.n_robots == 200
    assert settings.jobs == 1


def test_yaml_overrides(clean_env, tmp_path):
    path = tmp_path / "lab.yaml"
    path.write_text(
        "swarm:\n  d: 2.0\nsimulation:\n  dt: 0.05\nruntime:\n  jobs: 3\n  output_dir: out\n"
    )
    settings, defaults = load_config(str(path))
    assert defaults.d == 2.0
    assert defaults.dt == 0.05
    assert defaults.lane_speed == 1.0
    assert settings.jobs == 3
    assert settings.output_dir == "out"


def test_environment_beats_yaml(clean_env, tmp_path):
    path = tmp_path / "lab.yaml"
    path.write_text("runtime:\n  jobs: 3\n")
    clean_env.setenv("STL_JOBS", "5")
    settings, _ = load_config(str(path))
    assert settings.jobs == 5


def test_config_path_from_environment(clean_env, tmp_path):
    path = tmp_path / "env.yaml"
    path.write_text("search:\n  theta_samples: 12\n")
    clean_env.setenv("STL_CONFIG_PATH", str(path))
    _, defaults = load_config()
    assert defaults.theta_samples == 12


def test_missing_file_gives_builtin_defaults(clean_env, tmp_path):
    _, defaults = load_config(str(tmp_path / "absent.yaml"))
    assert defaults == ExperimentDefaults()
