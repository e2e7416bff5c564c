import numpy as np
import pytest

from harmext import _backend


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=_backend.available())
def backend(request):
    prev = _backend.use(request.param)
    yield request.param
    _backend.use(prev)


def disk_points(rng, count, r_max):
    r = r_max * np.sqrt(rng.uniform(0, 1, count))
    return r * np.exp(1j * rng.uniform(0, 2 * np.pi, count))


def ball_points(rng, count, r_max):
    v = rng.standard_normal((count, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * (r_max * rng.uniform(0, 1, count) ** (1 / 3))[:, None]
