import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def line_cloud(rng):
    # dense 1-D segment embedded in the plane
    t = np.sort(rng.random(500))
    return np.column_stack([t, 0.5 * t + 0.1])


@pytest.fixture
def plane_cloud(rng):
    return rng.random((600, 2))
