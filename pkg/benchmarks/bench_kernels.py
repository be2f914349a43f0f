"""Compare the compiled and plain-numpy integer reduction kernels.

    python3 benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]

Both paths run the same kernel bodies on the same int64 matrices; results
are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from almostded import _kernels
from almostded._kernels import INT64_LIMIT


def random_matrix(rng, n, width=4):
    """Banded table shaped like generator-by-atom tables of interval indicators."""
    cols = n + n // 2
    a = np.zeros((n, cols), dtype=np.int64)
    for i in range(n):
        lo = int(rng.integers(0, cols - width))
        a[i, lo:lo + int(rng.integers(1, width + 1))] = rng.integers(-3, 4)
    return a


def run_hnf(kernel, a):
    h = a.copy()
    u = np.eye(a.shape[0], dtype=np.int64)
    r, over = kernel(h, u, INT64_LIMIT)
    return h, u, r, over


def run_smith(kernel, a):
    w = a.copy()
    out = np.zeros(min(a.shape), dtype=np.int64)
    cnt, over = kernel(w, out, INT64_LIMIT)
    return sorted(out[:cnt]), over


def best_of(f, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        f()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.USE_NUMBA:
        print("numba disabled or missing: nothing to compare")
        return
    rng = np.random.default_rng(args.seed)
    # compile once outside the timings
    warm = random_matrix(rng, 4)
    run_hnf(_kernels.jit_hnf_inplace, warm)
    run_smith(_kernels.jit_smith_diagonal_inplace, warm)

    print(f"{'kernel':<8} {'n':>4} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    for n in args.sizes:
        a = random_matrix(rng, n)
        for name, runner, py, jit in (
            ("hnf", run_hnf, _kernels.py_hnf_inplace, _kernels.jit_hnf_inplace),
            ("smith", run_smith, _kernels.py_smith_diagonal_inplace, _kernels.jit_smith_diagonal_inplace),
        ):
            ref, got = runner(py, a), runner(jit, a)
            same = all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(ref, got))
            if not same:
                raise SystemExit(f"{name} n={n}: paths disagree")
            if ref[-1]:
                print(f"{name:<8} {n:>4} {'overflow, skipped':>36}")
                continue
            tp = best_of(lambda: runner(py, a), args.repeat)
            tj = best_of(lambda: runner(jit, a), args.repeat)
            print(f"{name:<8} {n:>4} {tp:12.5f} {tj:12.5f} {tp / tj:8.1f}x")


if __name__ == "__main__":
    main()
