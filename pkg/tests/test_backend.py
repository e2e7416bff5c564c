import numpy as np
import pytest

import harmext
from harmext import _backend, _kernels_py


def test_selection():
    assert "python" in harmext.available_backends()
    assert harmext.backend() in harmext.available_backends()
    with pytest.raises(ValueError):
        harmext.use_backend("fortran")


def test_use_returns_previous():
    first = harmext.backend()
    prev = harmext.use_backend("python")
    try:
        assert prev == first and harmext.backend() == "python"
    finally:
        harmext.use_backend(prev)


def test_kernels_match_reference(backend, rng):
    # both implementations against a direct numpy evaluation
    t = 2 * np.pi * np.arange(128) / 128
    vals = np.exp(1j * t) * (1 + 0.2 * np.cos(3 * t))
    z = 0.8 * rng.uniform(0, 1, 30) * np.exp(2j * np.pi * rng.uniform(0, 1, 30))
    P = (1 - np.abs(z[:, None]) ** 2) / np.abs(np.exp(1j * t)[None] - z[:, None]) ** 2
    ref = (P * vals).mean(axis=1)
    got = _backend.disk_poisson_sum(z.real, z.imag, np.cos(t), np.sin(t), vals)
    assert np.max(np.abs(got - ref)) < 1e-13

    nodes = rng.standard_normal((200, 3))
    nodes /= np.linalg.norm(nodes, axis=1, keepdims=True)
    w = rng.uniform(0, 1, 200)
    v = rng.standard_normal((200, 2))
    x = 0.5 * rng.uniform(-1, 1, (7, 3))
    K = (1 - (x**2).sum(1))[:, None] / (4 * np.pi * np.linalg.norm(x[:, None] - nodes[None], axis=2) ** 3)
    assert np.max(np.abs(_backend.ball_poisson_sum(x, nodes, w, v) - (K * w) @ v)) < 1e-13


def test_python_fallback_module_complete():
    for name in ("disk_poisson_sum", "ball_poisson_sum", "sphere_map"):
        assert callable(getattr(_kernels_py, name))
