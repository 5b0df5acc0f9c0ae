# tests/conftest.py
import os

# Settings are cached on first use; keep sweeps serial unless a test asks for workers
os.environ.setdefault("COULOMB_THREADS", "1")

import mpmath
import pytest

from coulombxs.core.config import get_settings
from coulombxs.schemas import CoulombInteraction, Sign
from coulombxs.semiconductor import reference_sample

mpmath.mp.dps = 30

@pytest.fixture
def fresh_settings():
    """Rebuild settings from the (monkeypatched) environment, and again afterwards."""
    get_settings.cache_clear()
    yield get_settings
    get_settings.cache_clear()


@pytest.fixture
def attract_one():
    return CoulombInteraction(xi=1.0, sign=Sign.ATTRACT, k=1.0)


@pytest.fixture
def repel_one():
    return CoulombInteraction(xi=1.0, sign=Sign.REPEL, k=1.0)


@pytest.fixture
def low_density_sample():
    """T = 78 K, ε = 10, m* = 0.2 m₀, K = 0.15 at n = 1e15 cm⁻³."""
    return reference_sample(n=1e15)
