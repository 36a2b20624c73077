import numpy as np
import pytest

from euler2d import GasModel


@pytest.fixture
def gas():
    return GasModel()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_states(rng, n, vel_scale=3.0):
    """Valid random primitive states stacked as (4, n); density and pressure
    log-uniform over [0.1, 10]."""
    return np.stack([
        10.0 ** rng.uniform(-1.0, 1.0, n),
        rng.uniform(-vel_scale, vel_scale, n),
        rng.uniform(-vel_scale, vel_scale, n),
        10.0 ** rng.uniform(-1.0, 1.0, n),
    ])


def rel_err(got, want):
    """Max absolute deviation scaled by the reference magnitude (floor 1)."""
    scale = max(float(np.max(np.abs(want))), 1.0)
    return float(np.max(np.abs(np.asarray(got) - np.asarray(want)))) / scale
