# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Signatures mirror harmext._kernels_py exactly."""

import numpy as np

from libc.math cimport atan2, cos, fabs, hypot, pow, sin, sqrt

cdef double PI = 3.141592653589793
cdef double HALF_PI = 1.5707963267948966
cdef double QUARTER_PI = 0.7853981633974483


def disk_poisson_sum(double[::1] zx, double[::1] zy, double[::1] cos_t,
                     double[::1] sin_t, double complex[::1] values):
    cdef Py_ssize_t m = zx.shape[0], n = cos_t.shape[0], i, k
    cdef double rho2, num, den, x, y
    cdef double complex acc
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] res = out
    for i in range(m):
        x = zx[i]
        y = zy[i]
        rho2 = x * x + y * y
        num = 1.0 - rho2
        acc = 0.0
        for k in range(n):
            den = 1.0 + rho2 - 2.0 * (x * cos_t[k] + y * sin_t[k])
            acc = acc + values[k] * (num / den)
        res[i] = acc / n
    return out


def ball_poisson_sum(double[:, ::1] points, double[:, ::1] nodes,
                     double[::1] weights, double[:, ::1] values):
    cdef Py_ssize_t m = points.shape[0], n = nodes.shape[0]
    cdef Py_ssize_t d = values.shape[1], i, k, c
    cdef double x0, x1, x2, num, dx, dy, dz, r2, kern
    cdef double inv4pi = 1.0 / (4.0 * PI)
    out = np.zeros((m, d), dtype=np.float64)
    cdef double[:, ::1] res = out
    for i in range(m):
        x0 = points[i, 0]
        x1 = points[i, 1]
        x2 = points[i, 2]
        num = (1.0 - (x0 * x0 + x1 * x1 + x2 * x2)) * inv4pi
        for k in range(n):
            dx = x0 - nodes[k, 0]
            dy = x1 - nodes[k, 1]
            dz = x2 - nodes[k, 2]
            r2 = dx * dx + dy * dy + dz * dz
            kern = weights[k] * num / (r2 * sqrt(r2))
            for c in range(d):
                res[i, c] += kern * values[k, c]
    return out


cdef inline double _q(double phi, double p) nogil:
    return pow(1.0 - sin(phi) * cos(phi), p)


cdef inline double _g_base(double phi, double alpha, double p) nogil:
    # phi in [0, pi/2], alpha in [0, pi/2]
    if alpha <= 0.0:
        return 0.0
    return HALF_PI * pow(alpha / HALF_PI, _q(phi, p))


cdef inline double _g_quadrant(double phi, double alpha, double p) nogil:
    if phi <= HALF_PI:
        return _g_base(phi, alpha, p)
    return HALF_PI - _g_base(PI - phi, HALF_PI - alpha, p)


cdef inline double _h_quadrant(double phi, double alpha, double p) nogil:
    if alpha <= QUARTER_PI:
        return PI * pow(phi / PI, 1.0 + p * (PI - 4.0 * alpha))
    return PI - PI * pow((PI - phi) / PI, 1.0 + p * (4.0 * alpha - PI))


def sphere_map(double[:, ::1] xyz, double p):
    cdef Py_ssize_t n = xyz.shape[0], i
    cdef double x, y, z, phi, alpha, a2, phi2, s
    out = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] res = out
    for i in range(n):
        x = xyz[i, 0]
        y = xyz[i, 1]
        z = xyz[i, 2]
        if x == 0.0 and y == 0.0:
            # poles are fixed points
            res[i, 0] = 0.0
            res[i, 1] = 0.0
            res[i, 2] = 1.0 if z > 0.0 else -1.0
            continue
        phi = atan2(hypot(x, y), z)
        alpha = atan2(fabs(y), fabs(x))
        a2 = _g_quadrant(phi, alpha, p)
        phi2 = _h_quadrant(phi, a2, p)
        s = sin(phi2)
        res[i, 0] = s * cos(a2) * (-1.0 if x < 0.0 else 1.0)
        res[i, 1] = s * sin(a2) * (-1.0 if y < 0.0 else 1.0)
        res[i, 2] = cos(phi2)
    return out
