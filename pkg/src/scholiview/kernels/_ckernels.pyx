# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the numeric kernels.

Contracts match ``_pykernels`` exactly; see that module for semantics.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def pagerank_dense(object weights, double damping, double tol, int max_iters):
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] w = \
        np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] scores = np.full(n, 1.0 / n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] new = np.zeros(n)
    cdef Py_ssize_t i, j, it
    cdef double dangling_mass, base, si, delta

    for i in range(n):
        for j in range(n):
            out[i] += w[i, j]

    for it in range(max_iters):
        dangling_mass = 0.0
        for i in range(n):
            if out[i] <= 0.0:
                dangling_mass += scores[i]
        base = (1.0 - damping) / n + damping * dangling_mass / n
        for j in range(n):
            new[j] = base
        for i in range(n):
            if out[i] > 0.0:
                si = damping * scores[i] / out[i]
                for j in range(n):
                    new[j] += si * w[i, j]
        delta = 0.0
        for j in range(n):
            delta += fabs(new[j] - scores[j])
            scores[j] = new[j]
        if delta < tol:
            break
    return scores


cdef double _norm(double[::1] v) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        s += v[i] * v[i]
    return sqrt(s)


cdef void _matvec(double[:, ::1] a, double[::1] v, double[::1] dst) nogil:
    cdef Py_ssize_t i, j
    cdef double s
    for i in range(a.shape[0]):
        s = 0.0
        for j in range(a.shape[1]):
            s += a[i, j] * v[j]
        dst[i] = s


cdef void _orthogonalize(double[::1] v, double[:, ::1] comps, Py_ssize_t count) nogil:
    cdef Py_ssize_t k, i
    cdef double dot
    for k in range(count):
        dot = 0.0
        for i in range(v.shape[0]):
            dot += v[i] * comps[k, i]
        for i in range(v.shape[0]):
            v[i] -= dot * comps[k, i]


def power_iteration_top2(object cov, double tol, int max_iters, object start):
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] a = \
        np.array(cov, dtype=np.float64, order="C")
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] start_arr = \
        np.ascontiguousarray(start, dtype=np.float64)
    cdef Py_ssize_t dim = a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] comps = np.zeros((2, dim))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] eigvals = np.zeros(2)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.zeros(dim)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] work = np.zeros(dim)
    cdef Py_ssize_t k, i, it, b
    cdef double norm, lam, dminus, dplus, step, frob, zero_cut
    cdef bint fell_back

    frob = 0.0
    for i in range(dim):
        for b in range(dim):
            frob += a[i, b] * a[i, b]
    # deflation residue below this is rounding noise, not spectrum
    zero_cut = 1e-12 * sqrt(frob)

    for k in range(2):
        frob = 0.0
        for i in range(dim):
            for b in range(dim):
                frob += a[i, b] * a[i, b]
        if sqrt(frob) <= zero_cut:
            _canonical_fallback(v, comps, k)
            for i in range(dim):
                comps[k, i] = v[i]
            eigvals[k] = 0.0
            continue
        for i in range(dim):
            v[i] = start_arr[k, i]
        _orthogonalize(v, comps, k)
        norm = _norm(v)
        fell_back = False
        if norm > 1e-30:
            for i in range(dim):
                v[i] /= norm
        else:
            _canonical_fallback(v, comps, k)
            fell_back = True
        if not fell_back:
            for it in range(max_iters):
                _matvec(a, v, work)
                _orthogonalize(work, comps, k)
                norm = _norm(work)
                if norm < 1e-30:
                    _canonical_fallback(v, comps, k)
                    break
                dminus = 0.0
                dplus = 0.0
                for i in range(dim):
                    work[i] /= norm
                    dminus += (work[i] - v[i]) * (work[i] - v[i])
                    dplus += (work[i] + v[i]) * (work[i] + v[i])
                step = sqrt(dminus)
                if sqrt(dplus) < step:
                    step = sqrt(dplus)
                for i in range(dim):
                    v[i] = work[i]
                if step < tol:
                    break
        _matvec(a, v, work)
        lam = 0.0
        for i in range(dim):
            lam += v[i] * work[i]
        for i in range(dim):
            comps[k, i] = v[i]
        eigvals[k] = lam
        for i in range(dim):
            for b in range(dim):
                a[i, b] -= lam * v[i] * v[b]
    return comps, eigvals


cdef void _canonical_fallback(double[::1] v, double[:, ::1] comps, Py_ssize_t count):
    cdef Py_ssize_t i, j
    cdef double norm
    for j in range(v.shape[0]):
        for i in range(v.shape[0]):
            v[i] = 0.0
        v[j] = 1.0
        _orthogonalize(v, comps, count)
        norm = _norm(v)
        if norm > 1e-6:
            for i in range(v.shape[0]):
                v[i] /= norm
            return
    raise RuntimeError("no orthogonal direction found")


def pairwise_inverse_distance_weights(object positions, object offsets, object topic_of):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pos = np.asarray(positions, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off = np.asarray(offsets, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] topics = np.asarray(topic_of, dtype=np.int64)
    cdef Py_ssize_t n = off.shape[0] - 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] w = np.zeros((n, n))
    cdef Py_ssize_t i, j, p, q
    cdef cnp.int64_t d
    cdef double total
    for i in range(n):
        for j in range(i + 1, n):
            if topics[i] == topics[j]:
                continue
            total = 0.0
            for p in range(off[i], off[i + 1]):
                for q in range(off[j], off[j + 1]):
                    d = pos[p] - pos[q]
                    if d < 0:
                        d = -d
                    if d != 0:
                        total += 1.0 / d
            w[i, j] = total
            w[j, i] = total
    return w


def grouped_row_means(object matrix, object member_rows, object group_offsets):
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] m = \
        np.ascontiguousarray(matrix, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] rows = np.asarray(member_rows, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off = np.asarray(group_offsets, dtype=np.int64)
    cdef Py_ssize_t groups = off.shape[0] - 1
    cdef Py_ssize_t dim = m.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] out = np.empty((groups, dim))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] acc = np.zeros(dim)
    cdef Py_ssize_t g, r, i
    cdef cnp.int64_t lo, hi
    for g in range(groups):
        lo = off[g]
        hi = off[g + 1]
        for i in range(dim):
            acc[i] = 0.0
        for r in range(lo, hi):
            for i in range(dim):
                acc[i] += m[rows[r], i]
        for i in range(dim):
            out[g, i] = acc[i] / (hi - lo)
    return out
