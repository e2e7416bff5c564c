"""Compiled vs numpy kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from harmext import _backend, ball, disk, tennis


def cases():
    rng = np.random.default_rng(0)
    t = disk.trapezoid_nodes(512)
    vals = np.exp(1j * (t + 0.5 * np.sin(t)))
    z = 0.9 * np.sqrt(rng.uniform(0, 1, 2304)) * np.exp(2j * np.pi * rng.uniform(0, 1, 2304))
    quad = ball.SphereQuadrature(256, 512)
    fvals = tennis.f_sphere(quad.nodes, 5.0)
    axis = np.column_stack([np.zeros(81), np.zeros(81), np.linspace(-0.8, 0.8, 81)])
    return {
        "disk sum (2304 pts x 512 nodes)":
            lambda: _backend.disk_poisson_sum(z.real, z.imag, np.cos(t), np.sin(t), vals),
        "ball sum (81 pts x 131072 nodes)":
            lambda: _backend.ball_poisson_sum(axis, quad.nodes, quad.weights, fvals),
        "sphere map (131072 pts)":
            lambda: _backend.sphere_map(quad.nodes, 5.0),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = _backend.available()
    print(f"{'kernel':36s}" + "".join(f"{n:>12s}" for n in names) + "   speedup")
    for label, fn in cases().items():
        best = {}
        for name in names:
            prev = _backend.use(name)
            try:
                best[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            finally:
                _backend.use(prev)
        speed = f"{best['python'] / best['cython']:8.1f}x" if "cython" in best else "       -"
        print(f"{label:36s}" + "".join(f"{best[n] * 1e3:10.1f}ms" for n in names) + "  " + speed)


if __name__ == "__main__":
    main()
