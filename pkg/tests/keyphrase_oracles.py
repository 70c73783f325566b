"""Independent brute-force oracles for the ranking pipeline.

These re-derive every stage from its definition with no shared code
paths: exact-rational agglomerative clustering, quadratic-loop
co-occurrence weights, and a dense matrix PageRank.
"""

from fractions import Fraction

import numpy as np


def jaccard_fraction(a: frozenset, b: frozenset) -> Fraction:
    return Fraction(len(a & b), len(a | b))


def hac_oracle(stem_sets, threshold: float) -> list[tuple[int, ...]]:
    """Brute-force average-linkage clustering over Jaccard similarity.

    Enumerates merge steps: each step recomputes every inter-cluster
    average in exact rational arithmetic, merges the best pair
    (ties: lexicographically smallest id pair; the merged cluster keeps
    the smaller id), and stops when the best average drops below the
    threshold. Returns sorted member tuples, ordered by cluster id.
    """
    n = len(stem_sets)
    sims = {}
    for i in range(n):
        for j in range(i + 1, n):
            sims[(i, j)] = jaccard_fraction(frozenset(stem_sets[i]), frozenset(stem_sets[j]))
    thr = Fraction(str(threshold))
    clusters: dict[int, list[int]] = {i: [i] for i in range(n)}
    while len(clusters) > 1:
        best_pair = None
        best_avg = None
        ids = sorted(clusters)
        for ai, a in enumerate(ids):
            for b in ids[ai + 1 :]:
                total = Fraction(0)
                for x in clusters[a]:
                    for y in clusters[b]:
                        total += sims[(min(x, y), max(x, y))]
                avg = total / (len(clusters[a]) * len(clusters[b]))
                if best_avg is None or avg > best_avg:
                    best_avg = avg
                    best_pair = (a, b)
        if best_avg < thr:
            break
        a, b = best_pair
        clusters[a].extend(clusters[b])
        del clusters[b]
    return [tuple(sorted(clusters[k])) for k in sorted(clusters)]


def cooccurrence_weight_oracle(positions_a, positions_b) -> float:
    total = 0.0
    for p in positions_a:
        for q in positions_b:
            if p != q:
                total += 1.0 / abs(p - q)
    return total


def pagerank_oracle(weights: np.ndarray, damping: float, tol: float, max_iters: int) -> np.ndarray:
    """Dense-matrix PageRank: row-stochastic transition matrix with
    dangling rows replaced by the uniform distribution."""
    w = np.asarray(weights, dtype=np.float64)
    n = w.shape[0]
    out = w.sum(axis=1)
    transition = np.full((n, n), 1.0 / n)
    rows = out > 0
    transition[rows] = w[rows] / out[rows, None]
    scores = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        new = (1.0 - damping) / n + damping * (transition.T @ scores)
        delta = np.abs(new - scores).sum()
        scores = new
        if delta < tol:
            break
    return scores
