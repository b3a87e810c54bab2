"""Timing comparison: compiled kernels vs the pure-numpy fallback.

Run from the repo root after an editable install:

    python benchmarks/bench_kernels.py [--sizes 100,400,1000]
"""

import argparse
import time

import numpy as np

from doeforge.kernels import _kernels_py

try:
    from doeforge.kernels import _kernels_cy
except ImportError:
    _kernels_cy = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(sizes):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        x = rng.random((n, 4))
        swaps = rng.random((200, 3))
        gens = rng.random((max(4, n // 20), 4))
        samples = rng.random((50 * max(4, n // 20), 4))
        cases = [
            ("min_dist_sq", (x,)),
            ("maximin_interchange", (x, swaps)),
            ("cvt_assign", (gens, samples)),
            ("cl2_pair_sum", (x,)),
        ]
        for name, args in cases:
            t_py = timeit(getattr(_kernels_py, name), *args)
            if _kernels_cy is not None:
                t_cy = timeit(getattr(_kernels_cy, name), *args)
                ratio = t_py / t_cy if t_cy > 0 else float("inf")
            else:
                t_cy, ratio = float("nan"), float("nan")
            rows.append((name, n, t_py, t_cy, ratio))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,400,1000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if _kernels_cy is None:
        print("compiled extension not available; timing fallback only")
    print(f"{'kernel':22s} {'n':>6s} {'python [ms]':>12s} "
          f"{'cython [ms]':>12s} {'speedup':>8s}")
    for name, n, t_py, t_cy, ratio in bench(sizes):
        print(f"{name:22s} {n:6d} {t_py * 1e3:12.3f} "
              f"{t_cy * 1e3:12.3f} {ratio:8.1f}x")


if __name__ == "__main__":
    main()
