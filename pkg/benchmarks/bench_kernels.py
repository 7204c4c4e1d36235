"""Benchmark the modular elimination backends (numba @njit vs pure numpy).

The elimination over a word-size prime field is the hot kernel behind every
rational rank, kernel and saturation step.  This script times both backends
on synthetic matrices and on a real workload slice (the weight-(3,3) block
of the n = 3 relation computation), and reports a small table.

Run:  python benchmarks/bench_kernels.py [--sizes 200,400,800]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from comvar._modp import PRIMES, rref_mod_numpy
from comvar import _modp


def _numba_rref():
    fn = _modp._build_njit()
    return fn


def synthetic(rng: np.random.Generator, rows: int, cols: int, density=0.08):
    a = np.zeros((rows, cols), dtype=np.int64)
    nnz = int(rows * cols * density)
    ii = rng.integers(0, rows, nnz)
    jj = rng.integers(0, cols, nnz)
    vv = rng.integers(-50, 50, nnz)
    a[ii, jj] = vv % PRIMES[0]
    return a


def workload_matrix():
    """An honest slice: the witness matrix of the (3,3) block at its top
    degree with exponent 2 (the biggest elimination in the n = 3 run)."""
    from comvar.idealcalc import _Slices, matrix_T
    T = matrix_T(3, 3, 3)
    slices = _Slices(3, T.mono_degs)
    d, m = 20, 2
    d_hi = d + m * 12
    gcols, nrows = slices.gen_columns(T, d_hi)
    dcols = slices.delta_columns(m, d, d_hi)
    cols = dcols + [{i: -c for i, c in col.items()} for col in gcols]
    dense = np.zeros((nrows, len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for i, c in col.items():
            dense[i, j] = c % PRIMES[0]
    return dense


def bench(fn, a, p, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        work = a.copy()
        t0 = time.perf_counter()
        fn(work, p)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="200,400,800")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    p = PRIMES[0]
    rng = np.random.default_rng(0)

    numba_fn = _numba_rref()
    rows = []
    for size in sizes:
        a = synthetic(rng, size, size + size // 4)
        t_nb = bench(numba_fn, a, p, args.repeat)
        t_np = bench(rref_mod_numpy, a, p, args.repeat)
        rows.append((f"synthetic {size}x{size + size // 4}", t_nb, t_np))

    w = workload_matrix()
    t_nb = bench(numba_fn, w, p, args.repeat)
    t_np = bench(rref_mod_numpy, w, p, args.repeat)
    rows.append((f"weight-block slice {w.shape[0]}x{w.shape[1]}", t_nb, t_np))

    print(f"{'matrix':<34}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, t_nb, t_np in rows:
        print(f"{name:<34}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.2f}x")

    # agreement check on one instance
    a = synthetic(rng, 150, 200)
    r1, p1 = numba_fn(a.copy(), p)
    r2, p2 = rref_mod_numpy(a.copy(), p)
    assert r1 == r2 and list(p1) == list(p2), "backend disagreement"
    print("\nbackends agree on rank and pivots")


if __name__ == "__main__":
    main()
