"""Poisson kernel of the unit disk and harmonic extension of circle data."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _backend
from .errors import DomainError, ResolutionError

TWO_PI = 2.0 * np.pi


def trapezoid_nodes(n):
    return TWO_PI * np.arange(n) / n


class BoundaryMap:
    """Complex-valued function on the unit circle, parametrised by t in [0, 2pi)."""

    def __call__(self, t):
        raise NotImplementedError

    def is_real(self, nodes=256, tol=1e-12):
        return bool(np.max(np.abs(np.imag(self(trapezoid_nodes(nodes))))) <= tol)


class FourierPolynomial(BoundaryMap):
    """t -> sum_n c_n e^{int} over a finite set of frequencies."""

    def __init__(self, coeffs):
        self.coeffs = {int(k): complex(v) for k, v in coeffs.items() if v != 0}
        self._freqs = np.array(sorted(self.coeffs), dtype=float)
        self._vals = np.array([self.coeffs[int(k)] for k in self._freqs], dtype=complex)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if not self.coeffs:
            return np.zeros_like(t, dtype=complex)
        return np.exp(1j * t[..., None] * self._freqs) @ self._vals

    def __repr__(self):
        return f"FourierPolynomial({self.coeffs})"

    @classmethod
    def from_file(cls, path):
        """Lines ``n re im``; '#' starts a comment."""
        coeffs = {}
        for lineno, line in enumerate(open(path), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'n re im'")
            n = int(parts[0])
            coeffs[n] = coeffs.get(n, 0) + complex(float(parts[1]), float(parts[2]))
        return cls(coeffs)


class SinPerturbHomeo(BoundaryMap):
    """t -> exp(i (t + a sin t)); a circle homeomorphism for |a| < 1."""

    def __init__(self, a):
        if not abs(a) < 1:
            raise ValueError(f"|a| must be < 1 for a homeomorphism, got {a}")
        self.a = float(a)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * (t + self.a * np.sin(t)))

    def __repr__(self):
        return f"SinPerturbHomeo(a={self.a})"


class Sampled(BoundaryMap):
    """Uniform samples at t_j = 2 pi j / M, read back by trigonometric interpolation."""

    def __init__(self, values):
        values = np.asarray(values, dtype=complex).ravel()
        if values.size < 8:
            raise ValueError(f"need at least 8 samples, got {values.size}")
        self.values = values
        m = values.size
        c = np.fft.fft(values) / m
        k = np.fft.fftfreq(m, 1.0 / m)
        if m % 2 == 0:
            # split the Nyquist mode evenly between +m/2 and -m/2
            nyq = m // 2
            c = np.append(c, 0.5 * c[nyq])
            c[nyq] *= 0.5
            k = np.append(k, -k[nyq])
        self._freqs = k
        self._coeffs = c

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * t[..., None] * self._freqs) @ self._coeffs

    def __repr__(self):
        return f"Sampled(count={self.values.size})"

    @classmethod
    def from_file(cls, path):
        """One sample per line, ``re im``, starting at t = 0."""
        data = np.loadtxt(path, ndmin=2, comments="#")
        if data.shape[1] != 2:
            raise ValueError(f"{path}: expected two columns 're im'")
        return cls(data[:, 0] + 1j * data[:, 1])


class FunctionBoundary(BoundaryMap):
    """Adapter for an arbitrary vectorised callable of t."""

    def __init__(self, func, label="function"):
        self.func = func
        self.label = label

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=complex)

    def __repr__(self):
        return f"FunctionBoundary({self.label})"


def _check_radius(r):
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r}")


def kernel_closed(r, theta):
    _check_radius(r)
    return (1.0 - r * r) / (1.0 + r * r - 2.0 * r * np.cos(theta))


def kernel_series(r, theta, terms):
    """Real part of sum_{|n| <= terms} r^|n| e^{in theta}."""
    _check_radius(r)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    n = np.arange(1, terms + 1)
    return 1.0 + 2.0 * float(np.sum(r ** n * np.cos(n * theta)))


def terms_for_tail(r, tail=1e-14):
    """Smallest number of terms with r**terms below ``tail``."""
    if r == 0.0:
        return 1
    return max(1, int(np.ceil(np.log(tail) / np.log(r))))


def kernel_mass(r, nodes):
    """(1/2pi) * trapezoid integral of P_r over one period."""
    _check_radius(r)
    t = trapezoid_nodes(nodes)
    return float(np.mean((1.0 - r * r) / (1.0 + r * r - 2.0 * r * np.cos(t))))


def recommended_nodes(r):
    """Node count guidance N >= 64 / (1 - r) for evaluation at radius r."""
    return int(np.ceil(64.0 / (1.0 - r)))


@dataclass(frozen=True)
class DiskExtension:
    boundary: BoundaryMap
    nodes: int = 512
    max_radius: float = 0.95

    def __post_init__(self):
        if self.nodes < 64:
            raise ValueError(f"nodes must be >= 64, got {self.nodes}")
        if not 0.0 < self.max_radius < 1.0:
            raise ValueError(f"max_radius must lie in (0, 1), got {self.max_radius}")

    @cached_property
    def _quadrature(self):
        t = trapezoid_nodes(self.nodes)
        return np.cos(t), np.sin(t), np.asarray(self.boundary(t), dtype=complex)

    def evaluate(self, z, check=True):
        """Extension at the complex points ``z`` (any shape)."""
        z = np.asarray(z, dtype=complex)
        if check and z.size and np.max(np.abs(z)) > self.max_radius:
            raise ResolutionError()
        cos_t, sin_t, vals = self._quadrature
        flat = z.ravel()
        out = _backend.disk_poisson_sum(flat.real, flat.imag, cos_t, sin_t, vals)
        return out.reshape(z.shape)

    def boundary_value(self, theta):
        return complex(self.boundary(np.asarray(theta, dtype=float)))

    def node_values(self):
        return self._quadrature[2]

    def as_real_field(self, check=False):
        """R^2 -> R^2 view, (x, y) -> (Re F, Im F), for the finite-difference tools."""
        def F(X):
            w = self.evaluate(X[..., 0] + 1j * X[..., 1], check=check)
            return np.stack([w.real, w.imag], axis=-1)
        return F


def extend(ext, r, theta):
    if r < 0:
        raise DomainError(f"radius must be non-negative, got {r}")
    if r > ext.max_radius:
        raise ResolutionError()
    return complex(ext.evaluate(np.asarray(r * np.exp(1j * theta)), check=False))


def mean_value_check(ext):
    """|F(0) - mean of the boundary samples| on the extension's own nodes."""
    center = extend(ext, 0.0, 0.0)
    return abs(center - np.mean(ext.node_values()))
