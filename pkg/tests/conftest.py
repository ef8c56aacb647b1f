import numpy as np
import pytest

from divfrontier import GaussianParams, Histogram


def random_histogram(rng, n, floor=0.0):
    """Dirichlet draw, optionally floored away from the simplex boundary."""
    probs = rng.dirichlet(np.ones(n))
    if floor > 0:
        probs = probs + floor
    return Histogram(probs)


def random_gaussian(rng, d, mean_scale=1.0):
    mean = rng.uniform(-mean_scale, mean_scale, d)
    a = rng.uniform(-1.0, 1.0, (d, d))
    cov = a @ a.T + 0.3 * np.eye(d)
    return GaussianParams(mean, cov)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
