import numpy as np
import pytest

from gmclone import kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # JIT compilation happens once here so timed acceptance criteria measure
    # the algorithms, not the compiler.
    kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_equatorial_phase(rng):
    return float(rng.uniform(0.0, 2.0 * np.pi))
