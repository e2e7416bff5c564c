"""Multi-index polynomials and iterated Cauchy integrals on polydisks.

All integrals run over the distinguished boundary (the product of the bounding
circles) with the trapezoid rule in each angle. A monomial of degree d is
integrated exactly once ``nodes >= 2*d + 8``.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_DIM = 6
# coordinates evaluated as one vectorised block; the rest are looped over
_BLOCK_DIMS = 3


def multi_index(v):
    v = tuple(int(x) for x in v)
    if any(x < 0 for x in v):
        raise ValueError(f"multi-index entries must be >= 0, got {v}")
    return v


def order(v):
    return sum(v)


def mfactorial(v):
    return math.prod(math.factorial(x) for x in v)


class ComplexPolynomial:
    """Finite sum of c_v z^v; maps arrays of shape (..., n) to (...)."""

    def __init__(self, terms, n=None):
        clean = {}
        for v, c in terms.items():
            v = multi_index(v)
            clean[v] = clean.get(v, 0) + complex(c)
        dims = {len(v) for v in clean}
        if n is None:
            if len(dims) != 1:
                raise ValueError("cannot infer dimension from the terms")
            n = dims.pop()
        elif dims - {n}:
            raise ValueError(f"all multi-indices must have length {n}")
        self.n = n
        self.terms = {v: c for v, c in clean.items() if c != 0}

    def __call__(self, Z):
        Z = np.asarray(Z, dtype=complex)
        out = np.zeros(Z.shape[:-1], dtype=complex)
        for v, c in self.terms.items():
            out = out + c * np.prod(Z ** np.array(v), axis=-1)
        return out

    def __repr__(self):
        return f"ComplexPolynomial({self.terms}, n={self.n})"

    def coefficient(self, v):
        return self.terms.get(multi_index(v), 0j)

    @classmethod
    def parse(cls, text):
        """Terms ``coeff_re coeff_im : v1 v2 ... vn``, one per line; '#' comments."""
        terms = {}
        n = None
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                coef, idx = line.split(":")
                re_, im_ = (float(x) for x in coef.split())
                v = multi_index(idx.split())
            except ValueError as exc:
                raise ValueError(f"line {lineno}: cannot parse {line!r}: {exc}") from None
            if n is None:
                n = len(v)
            elif len(v) != n:
                raise ValueError(f"line {lineno}: expected {n} exponents, got {len(v)}")
            terms[v] = terms.get(v, 0) + complex(re_, im_)
        if n is None:
            raise ValueError("no terms found")
        return cls(terms, n)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.parse(fh.read())


def degree(P):
    if not P.terms:
        raise ValueError("degree undefined for the zero polynomial")
    return max(order(v) for v in P.terms)


def is_homogeneous(P):
    if not P.terms:
        raise ValueError("homogeneity undefined for the zero polynomial")
    return len({order(v) for v in P.terms}) == 1


@dataclass(frozen=True)
class PolydiskSpec:
    center: tuple
    radii: tuple

    def __post_init__(self):
        center = tuple(complex(c) for c in np.atleast_1d(self.center))
        radii = tuple(float(r) for r in np.atleast_1d(self.radii))
        if len(center) != len(radii):
            raise ValueError("center and radii must have the same length")
        if any(r <= 0 for r in radii):
            raise ValueError("all radii must be positive")
        if len(center) > MAX_DIM:
            raise ValueError(f"dimension {len(center)} exceeds the supported n <= {MAX_DIM}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radii", radii)

    @property
    def n(self):
        return len(self.center)

    def boundary_blocks(self, nodes):
        """Yield (zeta, U) blocks covering the distinguished-boundary grid.

        ``U_j = (zeta_j - a_j) / r_j`` is the unit-circle point. The grid has
        nodes**n points; coordinates beyond the last three are looped over so a
        block never exceeds nodes**3 points.
        """
        e = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        inner = min(self.n, _BLOCK_DIMS)
        outer = self.n - inner
        U_inner = np.stack(np.meshgrid(*([e] * inner), indexing="ij"), axis=-1)
        a = np.asarray(self.center)
        r = np.asarray(self.radii)
        for idx in itertools.product(range(nodes), repeat=outer):
            lead = np.broadcast_to(e[list(idx)], U_inner.shape[:-1] + (outer,))
            U = np.concatenate([lead, U_inner], axis=-1)
            yield a + r * U, U

    def boundary_mean(self, nodes, integrand):
        """Trapezoid mean of ``integrand(zeta, U)`` over the distinguished boundary."""
        total = sum(complex(np.sum(integrand(zeta, U)))
                    for zeta, U in self.boundary_blocks(nodes))
        return total / nodes ** self.n


def _check_interior(disk, z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape != (disk.n,):
        raise ValueError(f"point must have {disk.n} coordinates")
    if np.any(np.abs(z - np.asarray(disk.center)) >= np.asarray(disk.radii)):
        raise DomainError("point is not strictly inside the polydisk")
    return z


def cauchy_eval(f, disk, z, nodes=64):
    """Iterated Cauchy integral (1/2pi i)^n oint f(zeta) / prod(zeta_j - z_j) dzeta.

    With N nodes per circle the trapezoid sum of a polynomial whose degree in
    each variable is below N equals f(z) / prod(1 - w_j^N), w_j = (z_j - a_j)/r_j.
    The sum is multiplied by prod(1 - w_j^N), which makes such polynomials exact
    and leaves an aliasing error of order rho^-N for f analytic on a polydisk
    rho times larger.
    """
    z = _check_interior(disk, z)
    r = np.asarray(disk.radii)
    w = (z - np.asarray(disk.center)) / r
    # dzeta_j / (2 pi i) = (zeta_j - a_j) dt_j / 2pi = r_j U_j dt_j / 2pi
    raw = disk.boundary_mean(
        nodes, lambda zeta, U: f(zeta) * np.prod(r * U / (zeta - z), axis=-1))
    return raw * complex(np.prod(1.0 - w ** nodes))


def taylor_coeff(f, disk, v, nodes=64):
    """a_v = (1/2pi i)^n oint f(zeta) / prod zeta_j^(v_j + 1) dzeta, disk centred at 0."""
    v = multi_index(v)
    if len(v) != disk.n:
        raise ValueError(f"multi-index must have {disk.n} entries")
    if any(c != 0 for c in disk.center):
        raise ValueError("taylor_coeff needs a polydisk centred at the origin")
    p = np.array(v)
    scale = np.prod(np.asarray(disk.radii) ** -p.astype(float))
    return scale * disk.boundary_mean(
        nodes, lambda zeta, U: f(zeta) * np.prod(U ** -p, axis=-1))


def partial_derivative(f, v, z, disk, nodes=64):
    """v! (1/2pi i)^n oint f(zeta) / prod (zeta_j - z_j)^(v_j + 1) dzeta."""
    v = multi_index(v)
    if len(v) != disk.n:
        raise ValueError(f"multi-index must have {disk.n} entries")
    z = _check_interior(disk, z)
    r = np.asarray(disk.radii)
    p = np.array(v) + 1
    return mfactorial(v) * disk.boundary_mean(
        nodes, lambda zeta, U: f(zeta) * np.prod(r * U / (zeta - z) ** p, axis=-1))


def boundary_max(f, disk, nodes=64):
    """max |f| over the distinguished-boundary grid."""
    return max(float(np.max(np.abs(f(zeta)))) for zeta, _ in disk.boundary_blocks(nodes))


def multi_indices(n, max_order):
    """All multi-indices of length n with |v| <= max_order."""
    for v in itertools.product(range(max_order + 1), repeat=n):
        if sum(v) <= max_order:
            yield v
