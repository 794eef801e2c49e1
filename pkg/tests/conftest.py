"""
Shared fixtures for the throughput lab test suite.
"""

import logging
import math

import pytest
from hypothesis import settings

from src.core.logging_config import setup_logging
from src.core.model import SwarmParams

settings.register_profile("lab", max_examples=60, deadline=None)
settings.load_profile("lab")


@pytest.fixture(autouse=True)
def quiet_logging():
    setup_logging("WARNING", console_logging=False)
    yield
    logging.getLogger().handlers.clear()


@pytest.fixture
def unit_params():
    """v = d = 1 with a target of radius 3."""
    return SwarmParams(v=1.0, d=1.0, s=3.0)


@pytest.fixture
def slow_params():
    """Touch-and-run speed v = 0.1 with a target of radius 3."""
    return SwarmParams(v=0.1, d=1.0, s=3.0)


@pytest.fixture
def omega_max():
    return math.pi / 2
