from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def bell_phi_plus():
    return np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


@pytest.fixture
def ghz():
    a = np.zeros(8, dtype=complex)
    a[0] = a[7] = 1 / math.sqrt(2)
    return a


@pytest.fixture(scope="session")
def mono_closed_forms():
    return {"C_AB1": 2 * math.sqrt(10) / 9, "C_AB2": 4 / 9, "C_A|B1B2": 2 * math.sqrt(14) / 9}


@pytest.fixture(scope="session")
def poly_closed_forms():
    return {"Ca_AB1": math.sqrt(34) / 12, "Ca_AB2": math.sqrt(74) / 12, "Ca_A|B1B2": math.sqrt(106) / 12}
