#!/usr/bin/env python3
"""Benchmark the compiled LCS kernel against the pure-Python fallback.

The LCS length computation is the hot kernel of candidate scoring: every
tentative rewrite during decomposition is scored by a token delta against
the target. Run after an editable install:

    python benchmarks/bench_lcs.py
"""

import random
import time

from refdecomp import diffmetric
from refdecomp._lcs_fallback import lcs_length as lcs_python

try:
    from refdecomp._lcs import lcs_length as lcs_cython
except ImportError:
    lcs_cython = None


def bench(fn, pairs, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        acc = 0
        for a, b in pairs:
            acc += fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best, acc


def make_pairs(n_pairs, length, alphabet, seed=1234):
    rng = random.Random(seed)
    return [
        (
            [rng.randrange(alphabet) for _ in range(length)],
            [rng.randrange(alphabet) for _ in range(length)],
        )
        for _ in range(n_pairs)
    ]


def main():
    print(f"active kernel in refdecomp.diffmetric: {diffmetric.KERNEL}")
    print(f"{'length':>8} {'pairs':>6} {'python':>12} {'cython':>12} {'speedup':>8}")
    for length, n_pairs in ((40, 400), (100, 150), (200, 60), (400, 15)):
        pairs = make_pairs(n_pairs, length, alphabet=24)
        t_py, acc_py = bench(lcs_python, pairs)
        if lcs_cython is None:
            print(f"{length:>8} {n_pairs:>6} {t_py:>11.4f}s {'absent':>12} {'-':>8}")
            continue
        t_cy, acc_cy = bench(lcs_cython, pairs)
        assert acc_py == acc_cy, "kernels disagree"
        print(
            f"{length:>8} {n_pairs:>6} {t_py:>11.4f}s {t_cy:>11.4f}s "
            f"{t_py / t_cy:>7.1f}x"
        )


if __name__ == "__main__":
    main()
