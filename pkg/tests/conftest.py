import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from config import SEED  # noqa: E402


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="also run full-cutoff reproduction scans",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-cutoff scan, minutes per test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def small_scenario_dict():
    """Classical pump with k = l = 1: the state is two-mode squeezed vacuum with r = ξ."""
    return {
        "name": "tmsv",
        "hamiltonian": {"k": 1, "l": 1, "pump": "classical", "alpha_p": 1.0},
        "cutoffs": {"a": 10, "b": 10},
        "network": [],
        "vectors": [{"name": "R11", "spec": "Q{1 a}; P{1 a}; Q{1 b}; P{1 b}"}],
        "xi": {"start": 0.0, "stop": 0.2, "step": 0.1},
        "outputs": ["csv"],
    }
