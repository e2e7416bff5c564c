"""Finite-difference differential operators and harmonicity predicates.

Fields are numpy-vectorised callables: a point set of shape ``(..., n)`` goes
in, values of shape ``(...)`` (scalar field) or ``(..., m)`` (vector field)
come out. Complex-domain maps take complex arrays with the coordinate axis
last, so ``lambda z: z[..., 0] * z[..., 1]`` is ``z1*z2`` on C^2.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotHolomorphicError

SENSE_PRESERVING = "sense-preserving"
SENSE_REVERSING = "sense-reversing"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class DiffConfig:
    """Stencil configuration.

    ``step`` drives first-derivative stencils. Second-derivative stencils use
    ``second_step``: at h = 1e-5 the rounding term eps/h**2 is already 1e-6,
    too large for the harmonicity tolerances used downstream.
    """

    step: float = 1e-5
    scheme: str = "central-2nd-order"
    second_step: float = 1e-4
    det_tol: float = 1e-9

    def __post_init__(self):
        for name in ("step", "second_step"):
            h = getattr(self, name)
            if not 0.0 < h < 1e-2:
                raise ValueError(f"{name} must lie in (0, 1e-2), got {h}")
        if self.scheme != "central-2nd-order":
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.det_tol < 0:
            raise ValueError("det_tol must be non-negative")


DEFAULT = DiffConfig()


def classify(det, tol=DEFAULT.det_tol):
    if det > tol:
        return SENSE_PRESERVING
    if det < -tol:
        return SENSE_REVERSING
    return DEGENERATE


@dataclass(frozen=True)
class JacobianReport:
    matrix: np.ndarray
    det: float | None
    classification: str | None

    def to_dict(self):
        return {
            "matrix": self.matrix.tolist(),
            "det": self.det,
            "classification": self.classification,
        }


class Verdict(NamedTuple):
    ok: bool
    residual: float
    tol: float
    n_samples: int


def _as_vector_output(vals, lead_shape):
    vals = np.asarray(vals)
    if vals.shape == lead_shape:
        return vals[..., None]
    return vals


def jacobian_field(F, X, h=DEFAULT.step):
    """Central-difference Jacobians at every row of ``X``.

    ``X`` has shape ``(k, n)``; returns ``(k, m, n)`` with entry ``[., i, j]``
    approximating dF_i/dx_j.
    """
    X = np.asarray(X, dtype=float)
    k, n = X.shape
    shifts = np.eye(n) * h
    stencil = np.concatenate([X[None] + shifts[:, None], X[None] - shifts[:, None]])
    vals = _as_vector_output(F(stencil), stencil.shape[:-1])
    diff = (vals[:n] - vals[n:]) / (2.0 * h)  # (n, k, m)
    return np.moveaxis(diff, 0, -1)


def fd_jacobian(F, x, cfg=DEFAULT, with_det=True):
    x = np.asarray(x, dtype=float)
    J = jacobian_field(F, x[None], cfg.step)[0]
    m, n = J.shape
    if not with_det:
        return JacobianReport(J, None, None)
    if m != n:
        raise ValueError(f"determinant undefined for a {m}x{n} Jacobian")
    det = float(np.linalg.det(J))
    return JacobianReport(J, det, classify(det, cfg.det_tol))


def _directions(X):
    # real samples: coordinate axes; complex samples: e_j and i*e_j per coordinate
    n = X.shape[-1]
    eye = np.eye(n)
    if np.iscomplexobj(X):
        return np.concatenate([eye, 1j * eye]).astype(complex)
    return eye


def laplacian_field(u, X, h=DEFAULT.second_step):
    """Sum of pure second differences over all real directions, per row of X."""
    X = np.asarray(X)
    if not np.iscomplexobj(X):
        X = X.astype(float)
    dirs = _directions(X) * h
    stencil = np.concatenate([X[None] + dirs[:, None], X[None] - dirs[:, None]])
    d = dirs.shape[0]
    vals = np.asarray(u(stencil))
    center = np.asarray(u(X))
    return (vals[:d] + vals[d:] - 2.0 * center[None]).sum(axis=0) / h**2


def fd_laplacian(u, x, cfg=DEFAULT):
    x = np.asarray(x)
    return laplacian_field(u, x[None], cfg.second_step)[0]


def wirtinger_field(f, Z, j, h=DEFAULT.step):
    """(d/dz_j f, d/dzbar_j f) at every row of the complex array ``Z``."""
    Z = np.asarray(Z, dtype=complex)
    n = Z.shape[-1]
    if not 0 <= j < n:
        raise IndexError(f"coordinate index {j} out of range for n={n}")
    e = np.zeros(n, dtype=complex)
    e[j] = h
    fx = (np.asarray(f(Z + e)) - np.asarray(f(Z - e))) / (2.0 * h)
    fy = (np.asarray(f(Z + 1j * e)) - np.asarray(f(Z - 1j * e))) / (2.0 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


class WirtingerPair(NamedTuple):
    dz: complex
    dzbar: complex


def wirtinger(f, z, j, cfg=DEFAULT):
    """Wirtinger derivatives of ``f`` in coordinate ``j`` (0-based) at ``z``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    dz, dzbar = wirtinger_field(f, z[None], j, cfg.step)
    return WirtingerPair(complex(np.ravel(dz)[0]), complex(np.ravel(dzbar)[0]))


def _check_samples(samples):
    samples = np.asarray(samples)
    if samples.size == 0:
        raise ValueError("empty sample list")
    if samples.ndim == 1:
        samples = samples[:, None]
    return samples


def is_harmonic(u, samples, tol=1e-5, cfg=DEFAULT):
    """Sample-based Laplace check.

    Real samples are points of R^k; complex samples are points of C^n and the
    Laplacian runs over all 2n real directions.
    """
    X = _check_samples(samples)
    res = float(np.max(np.abs(laplacian_field(u, X, cfg.second_step))))
    return Verdict(res < tol, res, tol, X.shape[0])


def mixed_wirtinger_field(f, Z, j, k, h=DEFAULT.second_step):
    """D_j Dbar_k f via second differences, per row of ``Z``.

    D_j Dbar_k = (f_{x_j x_k} + f_{y_j y_k} + i (f_{x_j y_k} - f_{y_j x_k})) / 4.
    """
    Z = np.asarray(Z, dtype=complex)
    n = Z.shape[-1]
    ej = np.zeros(n, dtype=complex)
    ek = np.zeros(n, dtype=complex)
    ej[j] = h
    ek[k] = h

    def mixed(u, v):
        fz = lambda s: np.asarray(f(Z + s))
        return (fz(u + v) - fz(u - v) - fz(-u + v) + fz(-u - v)) / (4.0 * h * h)

    return 0.25 * (mixed(ej, ek) + mixed(1j * ej, 1j * ek)
                   + 1j * (mixed(ej, 1j * ek) - mixed(1j * ej, ek)))


def is_pluriharmonic(f, samples, tol=1e-5, cfg=DEFAULT):
    Z = _check_samples(np.asarray(samples, dtype=complex))
    n = Z.shape[-1]
    res = 0.0
    for j in range(n):
        for k in range(n):
            vals = mixed_wirtinger_field(f, Z, j, k, cfg.second_step)
            res = max(res, float(np.max(np.abs(vals))))
    return Verdict(res < tol, res, tol, Z.shape[0])


def holomorphy_residual(f, samples, cfg=DEFAULT):
    """Largest |d f / d zbar_j| over samples and coordinates."""
    Z = _check_samples(np.asarray(samples, dtype=complex))
    return max(float(np.max(np.abs(wirtinger_field(f, Z, j, cfg.step)[1])))
               for j in range(Z.shape[-1]))


def _realify(f, n):
    # C^n -> C^n map as R^2n -> R^2n with coordinates (x1, y1, ..., xn, yn)
    def F(X):
        Z = X[..., 0::2] + 1j * X[..., 1::2]
        W = np.asarray(f(Z), dtype=complex).reshape(Z.shape[:-1] + (n,))
        out = np.empty(W.shape[:-1] + (2 * n,))
        out[..., 0::2] = W.real
        out[..., 1::2] = W.imag
        return out
    return F


def real_jacobian_identity_check(f, z, cfg=DEFAULT, holo_tol=1e-6):
    """|J_R(f) - |det(df_i/dz_j)|^2| at ``z`` for a holomorphic f: C^n -> C^n."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = z.shape[0]
    C = np.empty((n, n), dtype=complex)
    for j in range(n):
        dz, dzbar = wirtinger_field(f, z[None], j, cfg.step)
        dz = np.asarray(dz).reshape(n)
        dzbar = np.asarray(dzbar).reshape(n)
        worst = float(np.max(np.abs(dzbar)))
        if worst > holo_tol:
            raise NotHolomorphicError(
                f"input not holomorphic at z: |df/dzbar_{j}| = {worst:.3g}")
        C[:, j] = dz
    x = np.empty(2 * n)
    x[0::2] = z.real
    x[1::2] = z.imag
    J_real = fd_jacobian(_realify(f, n), x, cfg).det
    return abs(J_real - abs(np.linalg.det(C)) ** 2)
