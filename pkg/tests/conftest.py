import numpy as np
import pytest

from gsqglab.grid import make_grid, RealField
from gsqglab.littlewood_paley import build_partition


@pytest.fixture(scope="session")
def grid64():
    return make_grid(64)


@pytest.fixture(scope="session")
def grid128():
    return make_grid(128)


@pytest.fixture(scope="session")
def part64(grid64):
    return build_partition(grid64)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)


@pytest.fixture()
def random_field(grid64, rng):
    from gsqglab.operators import band_limit

    raw = RealField(grid64, rng.standard_normal((64, 64)))
    return band_limit(raw, 8.0, keep_mean=False)
