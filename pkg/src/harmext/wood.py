"""Wood's harmonic homeomorphism of R^3 whose Jacobian vanishes on {x = 0}.

    f(x, y, z) = (x^3 - 3 x z^2 + y z,  y - 3 x z,  z)

Every component is harmonic, f is a bijection of R^3, and det Df = 3 x^2.
In R^n the map acts as the identity on the first n - 3 coordinates and as f
on the last three.
"""

import numpy as np

from . import diffops


def _wood_triple(x, y, z):
    return x**3 - 3.0 * x * z**2 + y * z, y - 3.0 * x * z, z


def eval3(x, y, z):
    return _wood_triple(x, y, z)


def real_cbrt(t):
    # sign(t) |t|^(1/3); np.cbrt already follows this convention
    return np.cbrt(t)


def invert3(a, b, c):
    """Unique preimage of (a, b, c): z = c, x = cbrt(a - b c), y = b + 3 x c."""
    x = real_cbrt(a - b * c)
    return x, b + 3.0 * x * c, c


def jacobian_det3(x, y, z):
    return 3.0 * x * x


def field3(P):
    """Vectorised R^3 -> R^3 form for arrays of shape (..., 3)."""
    P = np.asarray(P, dtype=float)
    return np.stack(_wood_triple(P[..., 0], P[..., 1], P[..., 2]), axis=-1)


def evalN(x, n=None):
    """Identity on x[:n-3], Wood triple on the last three coordinates.

    Accepts a single point or an array of points with the coordinate axis last.
    """
    x = np.asarray(x, dtype=float)
    if n is None:
        n = x.shape[-1]
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    if x.shape[-1] != n:
        raise ValueError(f"point has {x.shape[-1]} coordinates, expected {n}")
    out = x.copy()
    out[..., n - 3:] = field3(x[..., n - 3:])
    return out


def invertN(w):
    w = np.asarray(w, dtype=float)
    n = w.shape[-1]
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    out = w.copy()
    out[..., n - 3:] = np.stack(invert3(w[..., n - 3], w[..., n - 2], w[..., n - 1]), axis=-1)
    return out


def jacobian_detN(x):
    x = np.asarray(x, dtype=float)
    return 3.0 * x[..., -3] ** 2


def harmonicity_report(n, samples, cfg=diffops.DEFAULT):
    """Largest |fd Laplacian| of each component of the R^n map over ``samples``."""
    X = np.asarray(samples, dtype=float)
    if X.size == 0:
        raise ValueError("empty sample list")
    X = X.reshape(-1, n)
    lap = diffops.laplacian_field(lambda P: evalN(P, n), X, cfg.second_step)
    return np.max(np.abs(lap), axis=0)


def verification_report(n=3, count=1000, rng=None, radius=2.0, cfg=diffops.DEFAULT):
    """Round trip, harmonicity and Jacobian checks on random points of [-radius, radius]^n.

    The round trip is w -> f(f^-1(w)) on random image points. The opposite
    order p -> f^-1(f(p)) is reported too but not gated: near x = 0 the cube
    root turns the rounding of f(p) into an error of order eps |f| / x^2,
    whatever the arithmetic of the inverse.

    Harmonicity is checked on the first 100 points, rescaled into |p| <= radius.
    """
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    rng = np.random.default_rng(0) if rng is None else rng
    P = rng.uniform(-radius, radius, size=(count, n))
    W = rng.uniform(-radius, radius, size=(count, n))
    round_trip = float(np.max(np.abs(evalN(invertN(W)) - W)))
    source_round_trip = float(np.max(np.abs(invertN(evalN(P)) - P)))

    H = P[:100]
    H = H * np.minimum(1.0, radius / np.linalg.norm(H, axis=1))[:, None]
    lap = harmonicity_report(n, H, cfg)

    J = diffops.jacobian_field(evalN, H, cfg.step)
    det_err = float(np.max(np.abs(np.linalg.det(J) - jacobian_detN(H))))

    Z = H.copy()
    Z[:, n - 3] = 0.0
    zero_set = float(np.max(np.abs(jacobian_detN(Z))))
    return {
        "n": n,
        "samples": count,
        "round_trip_max_error": round_trip,
        "source_round_trip_max_error": source_round_trip,
        "laplacian_max": float(np.max(lap)),
        "laplacian_per_component": [float(v) for v in lap],
        "jacobian_det_max_error": det_err,
        "zero_set_det_max": zero_set,
    }


def report_passes(report, tol=None):
    tol = {"round_trip": 1e-9, "laplacian": 1e-5, "jacobian": 1e-5} | (tol or {})
    return (report["round_trip_max_error"] < tol["round_trip"]
            and report["laplacian_max"] < tol["laplacian"]
            and report["jacobian_det_max_error"] < tol["jacobian"]
            and report["zero_set_det_max"] == 0.0)
