#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from scholiview.kernels import available_backends


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def build_cases(rng):
    cases = {}

    w = rng.random((600, 600))
    w[rng.random((600, 600)) < 0.5] = 0.0
    np.fill_diagonal(w, 0.0)
    cases["pagerank_dense (600 nodes)"] = lambda impl: impl.pagerank_dense(
        w, 0.85, 1e-6, 100
    )

    x = rng.standard_normal((40, 300))
    xc = x - x.mean(axis=0)
    cov = xc.T @ xc / 39
    idx = np.arange(1, 301, dtype=np.float64)
    start = np.vstack([np.sin(idx), np.sin(2 * idx + 0.5)])
    cases["power_iteration_top2 (300x300)"] = lambda impl: impl.power_iteration_top2(
        cov, 1e-10, 50_000, start
    )

    n = 700
    counts = rng.integers(1, 4, size=n)
    positions = rng.choice(np.arange(1, 20_000), size=int(counts.sum()), replace=False)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    topics = rng.integers(0, 500, size=n).astype(np.int64)
    cases["pairwise_weights (700 candidates)"] = (
        lambda impl: impl.pairwise_inverse_distance_weights(
            positions.astype(np.int64), offsets, topics
        )
    )

    matrix = rng.standard_normal((20_000, 100))
    member_rows = rng.integers(0, 20_000, size=150_000).astype(np.int64)
    cuts = np.sort(rng.choice(np.arange(1, 150_000), size=40_000, replace=False))
    group_offsets = np.concatenate([[0], cuts, [150_000]]).astype(np.int64)
    cases["grouped_row_means (150k members)"] = lambda impl: impl.grouped_row_means(
        matrix, member_rows, group_offsets
    )

    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    if "c" not in backends:
        print("compiled extension not built; benchmarking the fallback only")
    rng = np.random.default_rng(7)
    cases = build_cases(rng)

    width = max(len(name) for name in cases)
    header = f"{'kernel':<{width}}  " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call in cases.items():
        times = {b: timeit(lambda: call(impl), args.repeat) for b, impl in backends.items()}
        row = f"{name:<{width}}  " + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in times)
        if len(times) == 2:
            row += f"{times['python'] / times['c']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
