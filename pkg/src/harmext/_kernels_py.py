"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Used when the extension module is not built. Every function here has the
same signature and output layout as its compiled twin.
"""

import numpy as np

HALF_PI = 0.5 * np.pi
QUARTER_PI = 0.25 * np.pi

# rows of evaluation points per block, keeps the (rows x nodes) temporaries small
_BLOCK = 64


def disk_poisson_sum(zx, zy, cos_t, sin_t, values):
    zx = np.asarray(zx, dtype=float)
    zy = np.asarray(zy, dtype=float)
    out = np.empty(zx.shape[0], dtype=complex)
    n = cos_t.shape[0]
    for start in range(0, zx.shape[0], _BLOCK):
        x = zx[start:start + _BLOCK, None]
        y = zy[start:start + _BLOCK, None]
        rho2 = x * x + y * y
        kern = (1.0 - rho2) / (1.0 + rho2 - 2.0 * (x * cos_t + y * sin_t))
        out[start:start + _BLOCK] = kern @ values / n
    return out


def ball_poisson_sum(points, nodes, weights, values):
    points = np.asarray(points, dtype=float)
    out = np.empty((points.shape[0], values.shape[1]))
    for i, x in enumerate(points):
        d = x - nodes
        r2 = np.einsum("ij,ij->i", d, d)
        kern = weights * ((1.0 - x @ x) / (4.0 * np.pi)) / (r2 * np.sqrt(r2))
        out[i] = kern @ values
    return out


def _g_base(phi, alpha, p):
    q = (1.0 - np.sin(phi) * np.cos(phi)) ** p
    pos = alpha > 0.0
    out = np.zeros_like(alpha)
    out[pos] = HALF_PI * (alpha[pos] / HALF_PI) ** q[pos]
    return out


def _g_quadrant(phi, alpha, p):
    north = phi <= HALF_PI
    out = np.empty_like(alpha)
    out[north] = _g_base(phi[north], alpha[north], p)
    south = ~north
    out[south] = HALF_PI - _g_base(np.pi - phi[south], HALF_PI - alpha[south], p)
    return out


def _h_quadrant(phi, alpha, p):
    low = alpha <= QUARTER_PI
    out = np.empty_like(alpha)
    out[low] = np.pi * (phi[low] / np.pi) ** (1.0 + p * (np.pi - 4.0 * alpha[low]))
    high = ~low
    out[high] = np.pi - np.pi * ((np.pi - phi[high]) / np.pi) ** (
        1.0 + p * (4.0 * alpha[high] - np.pi))
    return out


def sphere_map(xyz, p):
    xyz = np.asarray(xyz, dtype=float)
    x, y, z = xyz[:, 0], xyz[:, 1], xyz[:, 2]
    out = np.empty_like(xyz)
    pole = (x == 0.0) & (y == 0.0)
    out[pole] = 0.0
    out[pole, 2] = np.where(z[pole] > 0.0, 1.0, -1.0)
    rest = ~pole
    x, y, z = x[rest], y[rest], z[rest]
    phi = np.arctan2(np.hypot(x, y), z)
    alpha = np.arctan2(np.abs(y), np.abs(x))
    a2 = _g_quadrant(phi, alpha, p)
    phi2 = _h_quadrant(phi, a2, p)
    s = np.sin(phi2)
    out[rest, 0] = s * np.cos(a2) * np.where(x < 0.0, -1.0, 1.0)
    out[rest, 1] = s * np.sin(a2) * np.where(y < 0.0, -1.0, 1.0)
    out[rest, 2] = np.cos(phi2)
    return out
