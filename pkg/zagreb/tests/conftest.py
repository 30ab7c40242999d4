import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from zagreb.families import double_broom
from zagreb.tree import random_tree

settings.register_profile("dev", max_examples=50, deadline=None)
settings.register_profile(
    "ci",
    max_examples=500,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture(scope="session")
def random_corpus():
    """Seeded uniformly random labeled trees on 2..40 vertices."""
    rng = np.random.default_rng(20240519)
    return [random_tree(int(N), rng) for N in rng.integers(2, 41, size=300)]


@pytest.fixture
def d434():
    """D(4;3;4), the eight-pendant tree with M2 = 60."""
    return double_broom(4, 3, 4)
