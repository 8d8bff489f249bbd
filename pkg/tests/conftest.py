import numpy as np
import pytest
from hypothesis import settings, HealthCheck

settings.register_profile(
    "desk",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("desk")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid9():
    from psdo import GridSpec

    return GridSpec(1, 9)


@pytest.fixture
def grid9m():
    from psdo import GridSpec

    return GridSpec(1, 9, "mod")
