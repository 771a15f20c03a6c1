import numpy as np
import pytest

from repfn import SeedAssignment, extend_seed


@pytest.fixture(scope="session")
def seed011() -> SeedAssignment:
    return SeedAssignment.from_string(2, 1, "011")


@pytest.fixture(scope="session")
def chi_small(seed011):
    """The canonical k=2, n0=1 table on [0, 2000]."""
    return extend_seed(seed011, 2000)


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
