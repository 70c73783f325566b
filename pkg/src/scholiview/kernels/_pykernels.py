"""Pure-Python (numpy) implementations of the numeric kernels.

Used when the compiled extension is unavailable or explicitly disabled.
Keeps the same contracts as ``_ckernels``: see each function's docstring
for the exact semantics both backends must honor.
"""

from __future__ import annotations

import numpy as np


def pagerank_dense(weights: np.ndarray, damping: float, tol: float, max_iters: int) -> np.ndarray:
    """Weighted PageRank over a dense adjacency matrix.

    ``weights[i, j]`` is the weight of the edge i -> j (0 if absent).
    Nodes with zero out-weight distribute their score uniformly. Starts
    uniform, iterates until the L1 change drops below ``tol`` or
    ``max_iters`` is reached. Scores sum to 1.
    """
    w = np.ascontiguousarray(weights, dtype=np.float64)
    n = w.shape[0]
    out = w.sum(axis=1)
    dangling = out <= 0.0
    transfer = np.zeros_like(w)
    nz = ~dangling
    transfer[nz] = w[nz] / out[nz, None]
    scores = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        dangling_mass = scores[dangling].sum()
        new = (1.0 - damping) / n + damping * (transfer.T @ scores + dangling_mass / n)
        delta = np.abs(new - scores).sum()
        scores = new
        if delta < tol:
            break
    return scores


def _orthonormal_fallback(previous: np.ndarray, count: int) -> np.ndarray:
    """First canonical basis vector with a usable component orthogonal
    to the ``count`` rows of ``previous``."""
    dim = previous.shape[1]
    for i in range(dim):
        v = np.zeros(dim)
        v[i] = 1.0
        for k in range(count):
            v -= (v @ previous[k]) * previous[k]
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm
    raise RuntimeError("no orthogonal direction found")


def power_iteration_top2(
    cov: np.ndarray, tol: float, max_iters: int, start: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Top-2 eigenpairs of a symmetric PSD matrix by power iteration.

    The second component is obtained by deflating the first
    (``A - lambda * v v^T``); both iterations re-orthogonalize against
    already-found components. A (near-)zero eigenvalue yields a
    deterministic canonical completion vector and eigenvalue 0.
    """
    a = np.array(cov, dtype=np.float64)
    dim = a.shape[0]
    comps = np.zeros((2, dim))
    eigvals = np.zeros(2)
    # Deflation residue below this (relative to the input) is rounding
    # noise, not spectrum; iterate on it and the direction is arbitrary.
    zero_cut = 1e-12 * np.linalg.norm(cov)
    for k in range(2):
        if np.linalg.norm(a) <= zero_cut:
            comps[k] = _orthonormal_fallback(comps, k)
            eigvals[k] = 0.0
            continue
        v = np.array(start[k], dtype=np.float64)
        for j in range(k):
            v -= (v @ comps[j]) * comps[j]
        norm = np.linalg.norm(v)
        v = v / norm if norm > 1e-30 else _orthonormal_fallback(comps, k)
        for _ in range(max_iters):
            w = a @ v
            for j in range(k):
                w -= (w @ comps[j]) * comps[j]
            norm = np.linalg.norm(w)
            if norm < 1e-30:
                v = _orthonormal_fallback(comps, k)
                break
            new = w / norm
            step = min(np.linalg.norm(new - v), np.linalg.norm(new + v))
            v = new
            if step < tol:
                break
        lam = float(v @ (a @ v))
        comps[k] = v
        eigvals[k] = lam
        a -= lam * np.outer(v, v)
    return comps, eigvals


def pairwise_inverse_distance_weights(
    positions: np.ndarray, offsets: np.ndarray, topic_of: np.ndarray
) -> np.ndarray:
    """Symmetric co-occurrence weights between candidates.

    ``positions[offsets[i]:offsets[i+1]]`` are candidate i's occurrence
    positions. For candidates in different topics,
    ``W[i, j] = sum over position pairs of 1 / |p - q|`` (pairs with
    p == q contribute 0); same-topic pairs and the diagonal stay 0.
    """
    pos = np.asarray(positions, dtype=np.int64)
    off = np.asarray(offsets, dtype=np.int64)
    topics = np.asarray(topic_of, dtype=np.int64)
    n = len(off) - 1
    w = np.zeros((n, n))
    for i in range(n):
        pi = pos[off[i] : off[i + 1]]
        for j in range(i + 1, n):
            if topics[i] == topics[j]:
                continue
            pj = pos[off[j] : off[j + 1]]
            total = 0.0
            for p in pi:
                for q in pj:
                    d = p - q
                    if d != 0:
                        total += 1.0 / abs(d)
            w[i, j] = total
            w[j, i] = total
    return w


def grouped_row_means(
    matrix: np.ndarray, member_rows: np.ndarray, group_offsets: np.ndarray
) -> np.ndarray:
    """Mean of selected matrix rows per group, accumulated sequentially
    in the order given (both backends produce identical bits)."""
    m = np.ascontiguousarray(matrix, dtype=np.float64)
    rows = np.asarray(member_rows, dtype=np.int64)
    off = np.asarray(group_offsets, dtype=np.int64)
    groups = len(off) - 1
    out = np.empty((groups, m.shape[1]))
    for g in range(groups):
        acc = np.zeros(m.shape[1])
        lo, hi = off[g], off[g + 1]
        for r in rows[lo:hi]:
            acc += m[r]
        out[g] = acc / (hi - lo)
    return out
