"""Kernel backend selection.

The compiled module ``harmext._kernels`` is used when it imports; otherwise
the numpy implementations in ``harmext._kernels_py`` take over. Library code
calls the module-level wrappers below so that :func:`use` switches every
caller at once.
"""

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_IMPLS = {"python": _kernels_py}
if _compiled is not None:
    _IMPLS["cython"] = _compiled

_active = _IMPLS.get("cython", _kernels_py)


def available():
    return sorted(_IMPLS)


def current():
    return "cython" if _active is _compiled else "python"


def use(name):
    """Switch the active backend; returns the previous name."""
    global _active
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} not available (have {available()})")
    prev = current()
    _active = _IMPLS[name]
    return prev


def disk_poisson_sum(zx, zy, cos_t, sin_t, values):
    return _active.disk_poisson_sum(
        np.ascontiguousarray(zx, dtype=float),
        np.ascontiguousarray(zy, dtype=float),
        np.ascontiguousarray(cos_t, dtype=float),
        np.ascontiguousarray(sin_t, dtype=float),
        np.ascontiguousarray(values, dtype=complex),
    )


def ball_poisson_sum(points, nodes, weights, values):
    return _active.ball_poisson_sum(
        np.ascontiguousarray(points, dtype=float),
        np.ascontiguousarray(nodes, dtype=float),
        np.ascontiguousarray(weights, dtype=float),
        np.ascontiguousarray(values, dtype=float),
    )


def sphere_map(xyz, p):
    return _active.sphere_map(np.ascontiguousarray(xyz, dtype=float), float(p))
