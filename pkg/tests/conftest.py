import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hadswitch import fixtures

settings.register_profile("repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def corpus():
    return fixtures.all_fixtures()


@pytest.fixture
def rng():
    return np.random.default_rng(7)
