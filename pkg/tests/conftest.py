import numpy as np
import pytest

from hyperprocrustes.isometry import random_hunitary
from hyperprocrustes.lorentz import lift


@pytest.fixture
def rng():
    return np.random.default_rng(20201)


def random_points(rng, n, d, scale=1.0):
    return lift(scale * rng.standard_normal((n, d)))


def related_pair(rng, n, d):
    """(target, source, R) with target = R source exactly."""
    from hyperprocrustes.isometry import apply

    R = random_hunitary(d, rng)
    source = random_points(rng, n, d)
    return apply(R, source), source, R
