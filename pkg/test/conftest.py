"""Shared fixtures for the geobounds test suite.

Programs that take minutes (level-10 ladders, the 81x81 qutrit instance)
are marked `slow` and only run with GEOBOUNDS_SLOW=1.
"""

from __future__ import annotations

import os

import numpy as np
import pytest

from source.config import Settings, set_settings


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running conic programs (set GEOBOUNDS_SLOW=1)")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("GEOBOUNDS_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow; set GEOBOUNDS_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def settings():
    """Default settings, isolated from the caller's environment."""
    s = Settings()
    set_settings(s)
    yield s
    set_settings(None)


@pytest.fixture
def solver(settings):
    """Settings for tests that need a working conic solver."""
    pytest.importorskip("cvxpy")
    pytest.importorskip("clarabel")
    return settings
