import numpy as np
import pytest

from .walkers import build_walker, random_walker, WalkerParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def clean_walker():
    return build_walker("clean", WalkerParams(), n_frames=180, fps=60.0)


@pytest.fixture
def noisy_walker(rng):
    return random_walker("noisy", rng)
