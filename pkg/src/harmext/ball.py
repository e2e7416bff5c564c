"""Harmonic extension of sphere data into the unit ball of R^3.

The kernel is P(x, zeta) = (1 - |x|^2) / (4 pi |x - zeta|^3) against surface
measure on S^2. Integrals use a product of Gauss-Legendre rules: in
mu = cos(phi) on each hemisphere, and in theta on each quadrant. The
tennis-ball map is not smooth across the equator and the meridians
theta = k pi/2 (g behaves like alpha^q there), so every panel ends on a seam;
Gauss nodes crowd the panel ends and keep the error small despite the
endpoint singularity.
"""

from dataclasses import asdict, dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import _backend
from .errors import DomainError, ResolutionError
from .tennis import SphereHomeo

FOLD_SWEEP_P = (1.0, 5.0, 20.0, 50.0, 100.0)
FOLD_SWEEP_Z = (0.3, 0.4, 0.5)
CONVERGENCE_TOL = 1e-4
COLLISION_RADII = (0.8, 0.9)


@dataclass(frozen=True)
class SphereQuadrature:
    n_phi: int = 128
    n_theta: int = 256

    def __post_init__(self):
        if self.n_phi < 32 or self.n_phi % 2:
            raise ValueError(f"n_phi must be even and >= 32, got {self.n_phi}")
        if self.n_theta < 64 or self.n_theta % 4:
            raise ValueError(f"n_theta must be a multiple of 4 and >= 64, got {self.n_theta}")

    def refined(self):
        return SphereQuadrature(2 * self.n_phi, 2 * self.n_theta)

    @cached_property
    def _rule(self):
        m, w = np.polynomial.legendre.leggauss(self.n_phi // 2)
        mu = np.concatenate([0.5 * (m - 1.0), 0.5 * (m + 1.0)])
        w_mu = np.concatenate([0.5 * w, 0.5 * w])
        g, gw = np.polynomial.legendre.leggauss(self.n_theta // 4)
        theta = np.concatenate([0.25 * np.pi * (g + 1.0) + 0.5 * np.pi * j for j in range(4)])
        w_theta = np.tile(0.25 * np.pi * gw, 4)
        s = np.sqrt(1.0 - mu**2)
        nodes = np.stack([
            np.outer(s, np.cos(theta)),
            np.outer(s, np.sin(theta)),
            np.repeat(mu[:, None], self.n_theta, axis=1),
        ], axis=-1).reshape(-1, 3)
        weights = np.outer(w_mu, w_theta).ravel()
        return nodes, weights

    @property
    def nodes(self):
        return self._rule[0]

    @property
    def weights(self):
        return self._rule[1]


def poisson_kernel_ball3(x, zeta):
    x = np.asarray(x, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    r2 = float(x @ x)
    if r2 >= 1.0:
        raise DomainError("x must lie inside the unit ball")
    d = np.linalg.norm(x - zeta, axis=-1)
    return (1.0 - r2) / (4.0 * np.pi * d**3)


def kernel_mass(x, quad=SphereQuadrature()):
    """Quadrature of the kernel over S^2; equals 1 up to quadrature error."""
    return float(quad.weights @ poisson_kernel_ball3(x, quad.nodes))


class BallExtension3:
    """Poisson extension of ``boundary`` (vectorised on (m, 3) unit vectors)."""

    def __init__(self, boundary, quad=SphereQuadrature(), max_radius=0.8):
        if not 0.0 < max_radius < 1.0:
            raise ValueError(f"max_radius must lie in (0, 1), got {max_radius}")
        self.boundary = boundary
        self.quad = quad
        self.max_radius = float(max_radius)

    @cached_property
    def _values(self):
        vals = np.asarray(self.boundary(self.quad.nodes), dtype=float)
        return vals.reshape(vals.shape[0], -1)

    def evaluate(self, points, check=True):
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        pts = pts.reshape(-1, 3)
        if check and np.any(np.linalg.norm(pts, axis=1) > self.max_radius):
            raise ResolutionError()
        out = _backend.ball_poisson_sum(pts, self.quad.nodes, self.quad.weights, self._values)
        if self._values.shape[1] == 1 and np.ndim(self.boundary(self.quad.nodes[:1])) == 1:
            out = out[:, 0]
        return out[0] if single else out

    def field(self):
        """Unchecked (..., 3) -> (..., d) view for the finite-difference tools."""
        def F(X):
            X = np.asarray(X, dtype=float)
            out = self.evaluate(X.reshape(-1, 3), check=False)
            return out.reshape(X.shape[:-1] + out.shape[1:])
        return F

    def spherical_mean(self):
        return self.quad.weights @ self._values / (4.0 * np.pi)


def extend_ball(ext, x):
    return ext.evaluate(np.asarray(x, dtype=float))


@lru_cache(maxsize=16)
def tennis_extension(p, n_phi=256, n_theta=512, max_radius=0.8):
    """Cached extension of the tennis-ball map (boundary sampling dominates setup)."""
    return BallExtension3(SphereHomeo(p), SphereQuadrature(n_phi, n_theta), max_radius)


def _axis(zs):
    zs = np.atleast_1d(np.asarray(zs, dtype=float))
    return np.column_stack([np.zeros_like(zs), np.zeros_like(zs), zs])


@dataclass(frozen=True)
class FoldReport:
    p: float
    z: float
    n_phi: int
    n_theta: int
    F3_plus: float
    F3_minus: float
    fold_gap: float
    folded: bool
    axis_offset: float
    convergence_delta: float
    resolution_ok: bool

    def to_dict(self):
        return asdict(self)


def fold_check(p, z, quad=SphereQuadrature(256, 512), max_radius=0.8,
               conv_tol=CONVERGENCE_TOL):
    """Compare F_3(0, 0, z) with F_3(0, 0, -z) for the tennis-ball extension.

    The resolution flag compares against the quadrature with both node counts
    doubled.
    """
    if not 0.0 < z <= max_radius:
        raise ResolutionError() if z > max_radius else DomainError("z must lie in (0, 1)")
    pts = _axis([z, -z])
    F = tennis_extension(p, quad.n_phi, quad.n_theta, max_radius).evaluate(pts)
    fine = quad.refined()
    F_fine = tennis_extension(p, fine.n_phi, fine.n_theta, max_radius).evaluate(pts)
    delta = float(np.max(np.abs(F_fine[:, 2] - F[:, 2])))
    return FoldReport(
        p=float(p),
        z=float(z),
        n_phi=quad.n_phi,
        n_theta=quad.n_theta,
        F3_plus=float(F[0, 2]),
        F3_minus=float(F[1, 2]),
        fold_gap=float(F[1, 2] - F[0, 2]),
        folded=bool(F[0, 2] < F[1, 2]),
        axis_offset=float(np.max(np.abs(F[:, :2]))),
        convergence_delta=delta,
        resolution_ok=delta <= conv_tol,
    )


def fold_sweep(ps=FOLD_SWEEP_P, zs=FOLD_SWEEP_Z, quad=SphereQuadrature(256, 512),
               max_radius=0.8):
    return [fold_check(p, z, quad, max_radius) for p in ps for z in zs]


@dataclass(frozen=True)
class AxisProfile:
    p: float
    rows: np.ndarray  # columns z, F1, F2, F3
    convergence_delta: float
    resolution_ok: bool

    @property
    def z(self):
        return self.rows[:, 0]

    @property
    def F3(self):
        return self.rows[:, 3]

    def is_monotone_increasing(self):
        return bool(np.all(np.diff(self.F3) > 0))


def axis_profile(p, zs, quad=SphereQuadrature(256, 512), max_radius=0.8,
                 conv_tol=CONVERGENCE_TOL):
    zs = np.asarray(zs, dtype=float)
    if np.any(np.abs(zs) > max_radius):
        raise ResolutionError()
    pts = _axis(zs)
    F = tennis_extension(p, quad.n_phi, quad.n_theta, max_radius).evaluate(pts)
    fine = quad.refined()
    F_fine = tennis_extension(p, fine.n_phi, fine.n_theta, max_radius).evaluate(pts)
    delta = float(np.max(np.abs(F_fine[:, 2] - F[:, 2])))
    return AxisProfile(float(p), np.column_stack([zs, F]), delta, delta <= conv_tol)


@dataclass(frozen=True)
class Collision:
    p: float
    z1: float
    z2: float
    F3: float
    image_distance: float

    def to_dict(self):
        return asdict(self)


def _monotone_run(dF, start, step):
    # extend from index `start` while the slope keeps its sign
    sign = np.sign(dF[start])
    i = start
    while 0 <= i + step < dF.size and np.sign(dF[i + step]) == sign:
        i += step
    return i


def find_collision(p, quad=SphereQuadrature(256, 512), tol=1e-6, radius=None,
                   samples=161):
    """Two distinct axis points with (numerically) the same image, or None.

    Scans F_3 along the axis |z| <= radius for a turning point, then solves
    F_3(z1) = F_3(z2) by bisection across it. Without an explicit ``radius``
    the scan runs at 0.8 and then at 0.9: for large p the turning point moves
    towards the poles (near z = 0.85 at p = 50).
    """
    for R in COLLISION_RADII if radius is None else (float(radius),):
        hit = _collision_at_radius(p, quad, tol, R, samples)
        if hit is not None:
            return hit
    return None


def _collision_at_radius(p, quad, tol, radius, samples):
    ext = tennis_extension(p, quad.n_phi, quad.n_theta, radius)
    zs = np.linspace(-radius, radius, samples)
    F3 = ext.evaluate(_axis(zs))[:, 2]
    dF = np.diff(F3)
    turns = np.nonzero(np.sign(dF[1:]) * np.sign(dF[:-1]) < 0)[0]
    if turns.size == 0:
        return None
    # segment i joins zs[i] and zs[i+1]; the turning point is zs[t+1]
    t = int(turns[0])
    a = _monotone_run(dF, t, -1)
    apex = t + 1
    b = _monotone_run(dF, t + 1, +1) + 1
    # the branch with the smaller span fixes the level; the other brackets it
    if abs(F3[b] - F3[apex]) <= abs(F3[a] - F3[apex]):
        z2, lo, hi = zs[b], zs[a], zs[apex]
    else:
        z2, lo, hi = zs[a], zs[apex], zs[b]
    level = float(ext.evaluate(_axis([z2]))[0, 2])

    def resid(z):
        return float(ext.evaluate(_axis([z]))[0, 2]) - level

    r_lo = resid(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        r_mid = resid(mid)
        if abs(r_mid) < 0.01 * tol or mid in (lo, hi):
            break
        if np.sign(r_mid) == np.sign(r_lo):
            lo, r_lo = mid, r_mid
        else:
            hi = mid
    z1 = mid
    F = ext.evaluate(_axis([z1, z2]))
    dist = float(np.linalg.norm(F[0] - F[1]))
    if dist >= tol or abs(z1 - z2) <= 1e-3:
        return None
    return Collision(float(p), float(z1), float(z2), float(F[0, 2]), dist)


def max_principle_check(ext, samples):
    """Largest |F| over interior sample points."""
    F = ext.evaluate(np.asarray(samples, dtype=float).reshape(-1, 3))
    return float(np.max(np.linalg.norm(F.reshape(F.shape[0], -1), axis=1)))
