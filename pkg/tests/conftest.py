import numpy as np
import pytest

from tecpol import trap
from tecpol.channel import from_bec_pair


@pytest.fixture(scope="session")
def bec55():
    return from_bec_pair(0.55, 0.55)


@pytest.fixture(scope="session")
def trap_bounds():
    """High-resolution trap bounds, shared by trap/eigen/acceptance tests."""
    return trap.compute_trap_bounds(nodes=100_000, tol=1e-6)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
