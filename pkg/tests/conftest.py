"""
Test configuration for pytest.
Ensures that the dicke_sim package can be imported properly.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Make the repository root importable so `dicke_sim` resolves even when the
# package isn't installed.
root_dir = Path(__file__).parent.parent
sys.path.insert(0, str(root_dir))

# Fail fast if the package can't be imported -- no mock fallbacks.
from dicke_sim.qstate.models import PureStateAngles, TwoQubitState  # noqa: E402,F401
from dicke_sim.dynamics.models import DecayParams  # noqa: E402
from dicke_sim.nonlocality.times import nonlocality_times  # noqa: E402,F401
from dicke_sim.qstate.states import bell_state, ground_state  # noqa: E402

DICKE_ENV_KEYS = (
    "DICKE_LOG", "DICKE_LOG_FILE", "DICKE_HERMITIAN_TOL", "DICKE_TRACE_TOL",
    "DICKE_PSD_TOL", "DICKE_CLASS_TOL", "DICKE_TRAJECTORY_TRACE_TOL",
    "DICKE_TRAJECTORY_PSD_TOL", "DICKE_TRAJECTORY_CLASS_TOL", "DICKE_RK4_STEP",
    "DICKE_SEARCH_T_END", "DICKE_SEARCH_GRID", "DICKE_SEED",
)


@pytest.fixture(autouse=True)
def clean_dicke_env(monkeypatch):
    """Run every test against the built-in configuration defaults."""
    for key in DICKE_ENV_KEYS:
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def psi_plus():
    return bell_state(+1)


@pytest.fixture
def psi_minus():
    return bell_state(-1)


@pytest.fixture
def ground():
    return ground_state()


@pytest.fixture
def half_coupled():
    """gamma0 = 1, gamma = 0.5."""
    return DecayParams(gamma0=1.0, g=0.5)


@pytest.fixture
def pi():
    return math.pi
