import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fourierpos.algebra import BasisMix, GaussPoly, mix

settings.register_profile(
    "default",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def random_mix(rng, dim):
    """Unit-norm five-component basis mix, the campaign population."""
    c = rng.normal(size=5)
    c /= np.linalg.norm(c)
    return mix(BasisMix(dim=dim, c=tuple(c)))


def random_gausspoly(rng, dim, max_deg=4):
    """General-width algebra element, wider than the mix population."""
    a = float(rng.uniform(0.1, 3.0))
    deg = int(rng.integers(0, max_deg + 1))
    p = tuple(rng.normal(size=deg + 1))
    return GaussPoly(a, p, dim=dim)


@pytest.fixture(scope="session")
def mixes_1d():
    rng = np.random.default_rng(20240811)
    return [random_mix(rng, 1) for _ in range(60)]


@pytest.fixture(scope="session")
def mixes_2d():
    rng = np.random.default_rng(20240812)
    return [random_mix(rng, 2) for _ in range(60)]


@pytest.fixture(scope="session")
def gausspolys_1d():
    rng = np.random.default_rng(7)
    return [random_gausspoly(rng, 1) for _ in range(40)]


@pytest.fixture(scope="session")
def gausspolys_2d():
    rng = np.random.default_rng(8)
    return [random_gausspoly(rng, 2) for _ in range(40)]
