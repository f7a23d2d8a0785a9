"""Time the numba and pure-numpy Jacobi kernels on random Hermitian matrices.

    python3 benchmarks/bench_kernels.py [--sizes 4,8,16,32,64] [--repeat 20]

Also times one end-to-end reflected-entropy sweep under each backend. The
first numba call (compilation, or loading the on-disk cache) is excluded.
"""

import argparse
import time

import numpy as np

from reflectent import _kernels, config, rindler


def random_hermitian(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (g + g.conj().T)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernel(sizes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    print(f"{'n':>4} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>8}")
    for n in sizes:
        h = random_hermitian(n, rng)
        thr = config.JACOBI_TOL * np.linalg.norm(h)
        _kernels.jacobi(h, thr, config.JACOBI_MAX_SWEEPS, backend="numba")  # warm up
        t_nb = best_of(lambda: _kernels.jacobi(h, thr, config.JACOBI_MAX_SWEEPS, backend="numba"), repeat)
        t_np = best_of(lambda: _kernels.jacobi(h, thr, config.JACOBI_MAX_SWEEPS, backend="numpy"), max(1, repeat // 4))
        print(f"{n:>4} {1e3 * t_nb:>12.3f} {1e3 * t_np:>12.3f} {t_np / t_nb:>8.1f}")


def bench_sweep(points=100):
    grid = np.linspace(0, rindler.R_MAX, points)
    for backend in ("numba", "numpy"):
        config.USE_NUMBA = backend == "numba"
        rindler.sweep("werner", ["AB"], "r", grid[:2])  # warm up
        t0 = time.perf_counter()
        rindler.sweep("werner", ["AB", "ABbar", "BBbar"], "r", grid)
        print(f"werner sweep, 3 pairs x {points} points, {backend}: {time.perf_counter() - t0:.3f} s")
    config.USE_NUMBA = True


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,8,16,32,64")
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare against")
    bench_kernel([int(s) for s in args.sizes.split(",")], args.repeat)
    bench_sweep()


if __name__ == "__main__":
    main()
