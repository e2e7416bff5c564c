"""Univalence checks for disk extensions of circle homeomorphisms.

Injectivity is only ever certified up to grid resolution: a clean report means
"no violation found on this grid at this tolerance", nothing more.
"""

from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from . import diffops
from .disk import DiskExtension, FunctionBoundary, SinPerturbHomeo, trapezoid_nodes
from .errors import DomainError, HypothesisError, ResolutionError

TWO_PI = 2.0 * np.pi
CONSISTENT = "consistent-with-injective"
VIOLATION = "violation-found"


class CircleHomeo:
    """Orientation-preserving circle homeomorphism t -> exp(i psi(t)).

    ``lift`` is psi on [0, 2pi]; it must be strictly increasing with
    psi(2pi) = psi(0) + 2pi.
    """

    def __init__(self, lift, family, params=None, check_points=4096):
        self.lift = lift
        self.family = family
        self.params = dict(params or {})
        t = np.linspace(0.0, TWO_PI, check_points + 1)
        psi = np.asarray(lift(t), dtype=float)
        if np.any(np.diff(psi) <= 0):
            bad = t[1:][np.diff(psi) <= 0][0]
            raise ValueError(f"lift not strictly increasing near t={bad:.6g}")
        if abs(psi[-1] - psi[0] - TWO_PI) > 1e-12:
            raise ValueError("lift must satisfy psi(2pi) = psi(0) + 2pi")

    @classmethod
    def identity(cls):
        return cls(lambda t: np.asarray(t, dtype=float), "identity")

    @classmethod
    def sin_perturb(cls, a):
        if not abs(a) < 1:
            raise ValueError(f"|a| must be < 1, got {a}")
        return cls(lambda t: t + a * np.sin(t), "sinperturb", {"a": float(a)})

    @classmethod
    def piecewise_linear(cls, breakpoints):
        """``breakpoints``: (t, psi) pairs with t running from 0 to 2pi."""
        bp = np.asarray(breakpoints, dtype=float)
        if bp.ndim != 2 or bp.shape[1] != 2 or bp.shape[0] < 2:
            raise ValueError("breakpoints must be a list of (t, psi) pairs")
        if bp[0, 0] != 0.0 or not np.isclose(bp[-1, 0], TWO_PI, rtol=0, atol=1e-15):
            raise ValueError("breakpoints must start at t=0 and end at t=2pi")
        ts, ps = bp[:, 0], bp[:, 1]
        return cls(lambda t: np.interp(t, ts, ps), "piecewise-linear",
                   {"breakpoints": bp.tolist()})

    def boundary(self, conjugate=False):
        if self.family == "sinperturb" and not conjugate:
            return SinPerturbHomeo(self.params["a"])
        sign = -1.0 if conjugate else 1.0
        lift = self.lift
        label = f"{'conj ' if conjugate else ''}{self.family}"
        return FunctionBoundary(lambda t: np.exp(sign * 1j * lift(t)), label)

    def label(self):
        if self.family == "sinperturb":
            return f"sinperturb:a={self.params['a']:g}"
        return self.family

    def __repr__(self):
        return f"CircleHomeo({self.label()})"


@dataclass(frozen=True)
class PolarGrid:
    n_radii: int = 24
    n_angles: int = 96
    max_radius: float = 0.9

    def points(self):
        # r = 0 is left out: it would repeat one source point n_angles times
        r = self.max_radius * np.arange(1, self.n_radii + 1) / self.n_radii
        theta = trapezoid_nodes(self.n_angles)
        return r[:, None] * np.exp(1j * theta[None, :])


@dataclass(frozen=True)
class InjectivityReport:
    boundary: str
    conjugate: bool
    n_radii: int
    n_angles: int
    max_radius: float
    nodes: int
    tol: float
    min_jacobian: float
    min_jacobian_at: tuple
    max_jacobian: float
    n_sense_preserving: int
    n_sense_reversing: int
    n_degenerate: int
    collisions: int
    min_image_separation: float
    verdict: str

    def to_dict(self):
        d = asdict(self)
        d["min_jacobian_at"] = list(self.min_jacobian_at)
        return d


def find_collisions(points, tol):
    """Index pairs (i < j) with |p_i - p_j| < tol, via a spatial hash of cell size tol."""
    cells = defaultdict(list)
    keys = np.floor(np.column_stack([points.real, points.imag]) / tol).astype(np.int64)
    for i, (cx, cy) in enumerate(keys):
        cells[(cx, cy)].append(i)
    pairs = []
    for i, (cx, cy) in enumerate(keys):
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in cells.get((cx + dx, cy + dy), ()):
                    if j > i and abs(points[i] - points[j]) < tol:
                        pairs.append((i, j))
    return pairs


def _min_pair_distance(points):
    xy = np.column_stack([points.real, points.imag])
    d, _ = cKDTree(xy).query(xy, k=2)
    return float(d[:, 1].min())


def rkc_scan(h, grid=PolarGrid(), nodes=512, tol=1e-6, conjugate=False,
             ext_max_radius=0.95, cfg=diffops.DEFAULT):
    """Evaluate the disk extension of ``h`` and its Jacobian on a polar grid.

    The verdict is a violation when the Jacobian takes both signs beyond
    ``tol`` or two grid points have images closer than ``tol``.

    ``h`` is a :class:`CircleHomeo` or any complex BoundaryMap.
    """
    if isinstance(h, CircleHomeo):
        boundary = h.boundary(conjugate)
        label = h.label()
    else:
        boundary = h
        if conjugate:
            boundary = FunctionBoundary(lambda t: np.conj(h(t)), f"conj {h!r}")
        label = repr(h)
    if grid.max_radius > ext_max_radius:
        raise ResolutionError()
    ext = DiskExtension(boundary, nodes=nodes, max_radius=ext_max_radius)

    Z = grid.points().ravel()
    images = ext.evaluate(Z)
    X = np.column_stack([Z.real, Z.imag])
    # the stencil reaches cfg.step past the grid; still well inside the resolved disk
    J = diffops.jacobian_field(ext.as_real_field(check=False), X, cfg.step)
    dets = J[:, 0, 0] * J[:, 1, 1] - J[:, 0, 1] * J[:, 1, 0]
    imin = int(np.argmin(dets))
    classes = [diffops.classify(d, tol) for d in dets]

    pairs = find_collisions(images, tol)
    separation = _min_pair_distance(images) / _min_pair_distance(Z)
    n_pos = classes.count(diffops.SENSE_PRESERVING)
    n_neg = classes.count(diffops.SENSE_REVERSING)
    # an injective harmonic map keeps one orientation throughout
    violation = (n_pos > 0 and n_neg > 0) or bool(pairs)
    return InjectivityReport(
        boundary=label,
        conjugate=bool(conjugate),
        n_radii=grid.n_radii,
        n_angles=grid.n_angles,
        max_radius=grid.max_radius,
        nodes=nodes,
        tol=tol,
        min_jacobian=float(dets[imin]),
        min_jacobian_at=(float(Z[imin].real), float(Z[imin].imag)),
        max_jacobian=float(dets.max()),
        n_sense_preserving=n_pos,
        n_sense_reversing=n_neg,
        n_degenerate=classes.count(diffops.DEGENERATE),
        collisions=len(pairs),
        min_image_separation=separation,
        verdict=VIOLATION if violation else CONSISTENT,
    )


def hz_at_zero(g, nodes=256):
    """(1/2pi) * integral of g(e^{it}) e^{-it} dt, by the trapezoid rule."""
    if nodes < 64:
        raise ValueError(f"nodes must be >= 64, got {nodes}")
    t = trapezoid_nodes(nodes)
    return complex(np.mean(np.asarray(g(t)) * np.exp(-1j * t)))


class LemmaReport(NamedTuple):
    hz: complex
    im_hz: float
    im_half_interval: float
    verdict: str


def lemma_sign_check(g, nodes=256, tol=1e-9):
    """Check the odd-part hypothesis on the node grid, then report Im g_z(0).

    Hypothesis: g(e^{it}) - g(e^{-it}) >= 0 on [0, pi], and > 0 somewhere.
    """
    t = trapezoid_nodes(nodes)
    vals = np.asarray(g(t))
    if np.max(np.abs(np.imag(vals))) > tol:
        raise HypothesisError("boundary function must be real-valued")
    upper = (t > 0) & (t < np.pi)
    # the node at 2pi - t is the reflection of the node at t
    diff = vals.real[upper] - vals.real[nodes - np.nonzero(upper)[0]]
    if np.any(diff < -tol):
        where = float(t[upper][np.argmin(diff)])
        raise HypothesisError(
            f"g(e^it) - g(e^-it) < 0 at t={where:.6g}", where=where)
    if np.max(diff) <= tol:
        raise HypothesisError(
            "g(e^it) - g(e^-it) vanishes on the whole grid in (0, pi)", where=None)
    hz = hz_at_zero(g, nodes)
    im_half = -float(np.sum(diff * np.sin(t[upper]))) / nodes
    return LemmaReport(hz, hz.imag, im_half, "nonzero" if abs(hz.imag) > tol else "zero")


def directional_degeneracy_probe(ext, z0, a, b, cfg=diffops.DEFAULT):
    """|grad (a Re F + b Im F)| at z0."""
    if a == 0 and b == 0:
        raise ValueError("zero direction vector")
    J = diffops.fd_jacobian(ext.as_real_field(check=False),
                            [complex(z0).real, complex(z0).imag], cfg).matrix
    return float(np.linalg.norm(a * J[0] + b * J[1]))


def winding_number(curve, z0, tol=1e-9):
    """Index of the closed polyline ``curve`` (last point joins the first) about z0."""
    p = np.asarray(curve, dtype=complex)
    q = np.roll(p, -1)
    seg = q - p
    seg_len2 = np.abs(seg) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(seg_len2 > 0, ((z0 - p) * np.conj(seg)).real / seg_len2, 0.0)
    s = np.clip(s, 0.0, 1.0)
    if np.min(np.abs(p + s * seg - z0)) < tol:
        raise DomainError("point lies on the curve")
    total = np.sum(np.angle((q - z0) / (p - z0)))
    return int(np.rint(total / TWO_PI))
