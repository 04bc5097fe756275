"""Time the numba and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call includes JIT compilation (or a cache load); it is
reported separately and excluded from the timings.
"""
import argparse
import time

import numpy as np

from gmfrbeta._accel import NUMBA_AVAILABLE
from gmfrbeta.kernels import get_backend
from gmfrbeta.synthetic import bivariate_normal, moment_matched_sample


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    x1, y1 = moment_matched_sample(100_000, 0.4, 1.8, rng=1)
    X, Y = bivariate_normal(60, 0.6, 0.05, 0.1, size=10_000, rng=2)
    fits = [moment_matched_sample(60, r, 2.0, mean_m=0.01, rng=k)
            for k, r in enumerate(np.linspace(0.1, 0.9, 200))]

    def minimise_all(k):
        for x, y in fits:
            mx, my, sx, sy, cov = k.moments(x, y)
            b = cov / sx ** 2
            k.minimize_area(x, y, b, my - b * mx, 1e-7, 1e-8, 500)

    return {
        "moments, n=100k": lambda k: k.moments(x1, y1),
        "batch_moments, 10k x 60": lambda k: k.batch_moments(X, Y),
        "area_objective, n=100k": lambda k: k.area_objective(x1, y1, 1.5, 0.01),
        "minimize_area, 200 x n=60": minimise_all,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    names = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])
    backends = {n: get_backend(n) for n in names}
    work = cases()
    if "numba" in backends:
        t0 = time.perf_counter()
        for fn in work.values():
            fn(backends["numba"])
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f} s")
    else:
        print("numba not installed: timing the numpy backend only")

    print(f"{'kernel':28s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in work.items():
        t = {n: best_of(lambda: fn(k), args.repeat) for n, k in backends.items()}
        row = f"{label:28s}" + "".join(f"{t[n] * 1e3:10.2f}ms" for n in names)
        if "numba" in t:
            row += f"  {t['numpy'] / t['numba']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
