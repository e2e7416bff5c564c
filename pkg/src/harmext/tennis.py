"""The "tennis ball" self-homeomorphism of S^2 and its S^(n-1) lift.

In spherical coordinates (phi polar, theta azimuth) the map is

    k(phi, theta) = (h_phi(g_phi(theta)), g_phi(theta))

where g_phi reparametrises each latitude circle and h_phi then moves points
along meridians. For large p the northern hemisphere is dragged towards the
south pole and vice versa, which makes the harmonic extension fold.

g_phi and h_phi are defined piecewise by reflection rules that refer back to a
base branch. Each evaluation here reduces the angle to the base interval
explicitly instead of recursing; the chain used is spelled out per branch.
"""

import math

import numpy as np

from . import _backend
from .errors import ConvergenceError, DomainError

PI = math.pi
HALF_PI = 0.5 * math.pi
QUARTER_PI = 0.25 * math.pi
TWO_PI = 2.0 * math.pi


def _check_p(p):
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise DomainError(f"{name}={value} outside [{lo:.6g}, {hi:.6g}]")


def q(phi, p):
    """(1 - sin(phi) cos(phi))**p on [0, pi/2]; lies in (0, 1]."""
    _check_range("phi", phi, 0.0, HALF_PI)
    _check_p(p)
    return (1.0 - math.sin(phi) * math.cos(phi)) ** p


def _g_base(phi, alpha, p):
    # (pi/2) (2 alpha / pi)^q(phi, p) with phi, alpha in [0, pi/2]
    if alpha <= 0.0:
        return 0.0  # keeps 0**q = 0 even if q underflows to 0
    return HALF_PI * (alpha / HALF_PI) ** q(phi, p)


def _g_quadrant(phi, alpha, p):
    """g_phi on [0, pi/2]; the southern rule is pi/2 - g_{pi-phi}(pi/2 - alpha)."""
    if phi <= HALF_PI:
        return _g_base(phi, alpha, p)
    return HALF_PI - _g_base(PI - phi, HALF_PI - alpha, p)


def g(phi, theta, p):
    """Latitude reparametrisation g_phi(theta).

    Reduction chain on [0, 2pi]:
      [0, pi/2]      base
      [pi/2, pi]     pi - g(pi - theta)
      [pi, 3pi/2]    pi + g(theta - pi)
      [3pi/2, 2pi]   pi + (pi - g(2pi - theta)) = 2pi - g(2pi - theta)
    """
    _check_range("phi", phi, 0.0, PI)
    _check_range("theta", theta, 0.0, TWO_PI)
    _check_p(p)
    if theta <= HALF_PI:
        return _g_quadrant(phi, theta, p)
    if theta <= PI:
        return PI - _g_quadrant(phi, PI - theta, p)
    if theta <= 1.5 * PI:
        return PI + _g_quadrant(phi, theta - PI, p)
    return TWO_PI - _g_quadrant(phi, TWO_PI - theta, p)


def g_inverse(phi, y, p, tol=1e-12, max_iter=200):
    """theta with g(phi, theta, p) = y, by bisection on the monotone map."""
    _check_range("y", y, 0.0, TWO_PI)
    lo, hi = 0.0, TWO_PI
    if y == 0.0:
        return 0.0
    if y == TWO_PI:
        return TWO_PI
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(phi, mid, p) < y:
            lo = mid
        else:
            hi = mid
    theta = lo if abs(g(phi, lo, p) - y) <= abs(g(phi, hi, p) - y) else hi
    if abs(g(phi, theta, p) - y) >= tol:
        raise ConvergenceError(
            f"g_inverse did not reach tol={tol:g} (phi={phi}, y={y}, p={p})")
    return theta


def _h_quadrant(phi, beta, p):
    """h_phi on [0, pi/2].

    [0, pi/4]    base      pi (phi/pi)^(1 + p(pi - 4 beta))
    [pi/4, pi/2] pi - h_{pi-phi}(pi/2 - beta), whose base form is
                 pi - pi ((pi - phi)/pi)^(1 + p(4 beta - pi))
    """
    if beta <= QUARTER_PI:
        return PI * (phi / PI) ** (1.0 + p * (PI - 4.0 * beta))
    return PI - PI * ((PI - phi) / PI) ** (1.0 + p * (4.0 * beta - PI))


def h(phi, theta, p):
    """Meridian displacement h_phi(theta).

    Reduction chain on [0, 2pi]:
      [pi, 2pi]    h(theta - pi)      (period pi)
      [pi/2, pi]   h(pi - theta)      (even about pi/2)
      [0, pi/2]    _h_quadrant
    """
    _check_range("phi", phi, 0.0, PI)
    _check_range("theta", theta, 0.0, TWO_PI)
    _check_p(p)
    beta = theta - PI if theta > PI else theta
    if beta > HALF_PI:
        beta = PI - beta
    return _h_quadrant(phi, beta, p)


def k(phi, theta, p):
    """(phi', theta') = (h_phi(g_phi(theta)), g_phi(theta))."""
    theta2 = g(phi, theta, p)
    return h(phi, theta2, p), theta2


def k_inverse(phi2, theta2, p, tol=1e-12):
    """Invert k: solve h_phi(theta2) = phi2 for phi, then g_phi(theta) = theta2."""
    _check_range("phi", phi2, 0.0, PI)
    lo, hi = 0.0, PI
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if h(mid, theta2, p) < phi2:
            lo = mid
        else:
            hi = mid
    phi = lo if abs(h(lo, theta2, p) - phi2) <= abs(h(hi, theta2, p) - phi2) else hi
    return phi, g_inverse(phi, theta2, p, tol=tol)


def to_cartesian(phi, theta):
    s = np.sin(phi)
    return np.stack([s * np.cos(theta), s * np.sin(theta), np.cos(phi)], axis=-1)


def to_spherical(xyz):
    """(phi, theta) with phi in [0, pi], theta in [0, 2pi)."""
    xyz = np.asarray(xyz, dtype=float)
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    phi = np.arctan2(np.hypot(x, y), z)
    theta = np.mod(np.arctan2(y, x), TWO_PI)
    return phi, theta


def _check_unit(x, tol=1e-9):
    norms = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(norms - 1.0) > tol):
        raise DomainError("input must lie on the unit sphere")


def f_sphere(x, p):
    """The tennis-ball map on S^2; accepts one point or an (m, 3) array.

    Works on the first-quadrant angle alpha = atan2(|y|, |x|) and restores the
    signs afterwards. g and h both preserve azimuthal quadrants, so this is the
    same map as k in (phi, theta) coordinates. It also makes the reflection
    symmetries in the planes x = 0 and y = 0 exact in floating point.
    """
    _check_p(p)
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = x.reshape(-1, 3)
    _check_unit(pts)
    out = _backend.sphere_map(pts, p)
    return out[0] if single else out


class SphereHomeo:
    """Callable wrapper of :func:`f_sphere` at a fixed parameter p."""

    def __init__(self, p):
        _check_p(p)
        self.p = float(p)

    def __call__(self, x):
        return f_sphere(x, self.p)

    def __repr__(self):
        return f"SphereHomeo(p={self.p:g})"


def f_star(x, p, n=None):
    """Lift to S^(n-1), n >= 4: identity on x_1..x_(n-3), R f(x_tail / R) on the tail.

    R is the norm of the last three coordinates; when R = 0 the tail stays zero.
    """
    _check_p(p)
    x = np.asarray(x, dtype=float)
    if n is None:
        n = x.shape[-1]
    if n < 4:
        raise ValueError(f"dimension must be >= 4, got {n}")
    if x.shape[-1] != n:
        raise ValueError(f"point has {x.shape[-1]} coordinates, expected {n}")
    single = x.ndim == 1
    pts = x.reshape(-1, n)
    _check_unit(pts)
    out = pts.copy()
    tail = pts[:, n - 3:]
    R = np.linalg.norm(tail, axis=1)
    pos = R > 0
    out[~pos, n - 3:] = 0.0
    if np.any(pos):
        unit = tail[pos] / R[pos, None]
        out[pos, n - 3:] = R[pos, None] * _backend.sphere_map(unit, p)
    return out[0] if single else out


class SphereHomeoN:
    def __init__(self, p, n):
        _check_p(p)
        if n < 4:
            raise ValueError(f"dimension must be >= 4, got {n}")
        self.p = float(p)
        self.n = int(n)

    def __call__(self, x):
        return f_star(x, self.p, self.n)


def random_sphere_points(count, rng, dim=3):
    v = rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def identity_suite(p, n_phi=33, n_theta=512, n_random=100, seed=0):
    """Largest violation of each structural identity of g, h, k and f.

    Returns a dict of residuals; every entry should be below 1e-12.
    """
    if n_phi < 16 or n_theta < 16:
        raise ValueError("grid needs at least 16 points per axis")
    _check_p(p)
    phis = np.linspace(0.0, PI, n_phi)
    upper = np.linspace(0.0, PI, n_theta)
    lower = np.linspace(PI, TWO_PI, n_theta)
    full = np.linspace(0.0, TWO_PI, n_theta)

    def worst(values):
        return float(max(values)) if len(values) else 0.0

    refl_pi, refl_3pi, bnd, fixes, h_vals, k_lines = [], [], [], [], [], []
    for phi in phis:
        refl_pi += [abs(g(phi, PI - t, p) - (PI - g(phi, t, p))) for t in upper]
        refl_3pi += [abs(g(phi, min(3 * PI - t, TWO_PI), p) - (3 * PI - g(phi, t, p)))
                     for t in lower]
        bnd += [abs(g(phi, 0.0, p)), abs(g(phi, TWO_PI, p) - TWO_PI)]
        h_vals += [abs(h(phi, 0.75 * PI, p) - phi), abs(h(phi, 0.0, p) - h(phi, TWO_PI, p))]
    for phi in (0.0, HALF_PI, PI):
        fixes += [abs(g(phi, t, p) - t) for t in full]
    for t in full:
        h_vals += [abs(h(0.0, t, p)), abs(h(PI, t, p) - PI)]
        k0, k1 = k(0.0, t, p), k(PI, t, p)
        k_lines += [abs(k0[0]), abs(k0[1] - t), abs(k1[0] - PI), abs(k1[1] - t)]

    rng = np.random.default_rng(seed)
    pts = random_sphere_points(n_random, rng)
    fx = f_sphere(pts, p)
    mx = f_sphere(pts * [-1.0, 1.0, 1.0], p)
    my = f_sphere(pts * [1.0, -1.0, 1.0], p)
    poles = f_sphere(np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]), p)
    return {
        "reflection_pi": worst(refl_pi),
        "reflection_3pi": worst(refl_3pi),
        "g_boundary": worst(bnd),
        "g_identity_rows": worst(fixes),
        "h_identities": worst(h_vals),
        "k_fixed_lines": worst(k_lines),
        "pole_fixing": float(np.max(np.abs(poles - [[0, 0, 1], [0, 0, -1]]))),
        "symmetry_x": float(np.max(np.abs(mx - fx * [-1.0, 1.0, 1.0]))),
        "symmetry_y": float(np.max(np.abs(my - fx * [1.0, -1.0, 1.0]))),
        "unit_norm": float(np.max(np.abs(np.linalg.norm(fx, axis=1) - 1.0))),
    }
