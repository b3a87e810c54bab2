# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics mirror _kernels_py exactly."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

from libc.math cimport INFINITY


def min_dist_sq(points):
    """Minimum pairwise squared distance and its pair (i < j)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] x = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, k, bi = 0, bj = 0
    cdef double best = INFINITY, acc, diff
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = x[i, k] - x[j, k]
                acc += diff * diff
            if acc < best:
                best = acc
                bi = i
                bj = j
    return float(best), int(bi), int(bj)


cdef void _refresh_row(double[:, ::1] x, double[:, ::1] d2, Py_ssize_t a,
                       Py_ssize_t n, Py_ssize_t d) noexcept:
    cdef Py_ssize_t i, k
    cdef double acc, diff
    for i in range(n):
        if i == a:
            d2[a, a] = INFINITY
            continue
        acc = 0.0
        for k in range(d):
            diff = x[i, k] - x[a, k]
            acc += diff * diff
        d2[a, i] = acc
        d2[i, a] = acc


cdef double _matrix_min(double[:, ::1] d2, Py_ssize_t n,
                        Py_ssize_t *pi, Py_ssize_t *pj) noexcept:
    cdef Py_ssize_t i, j
    cdef double best = INFINITY
    for i in range(n):
        for j in range(n):
            if d2[i, j] < best:
                best = d2[i, j]
                pi[0] = i
                pj[0] = j
    return best


def maximin_interchange(points, rand):
    """Random within-column value interchanges, keeping only improvements."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] xa = np.array(points, dtype=np.float64, order="C")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ra = np.ascontiguousarray(rand, dtype=np.float64)
    cdef double[:, ::1] x = xa
    cdef double[:, ::1] rnd = ra
    cdef Py_ssize_t n = xa.shape[0], d = xa.shape[1], m = ra.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] d2a = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] d2 = d2a
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sa = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sb = np.empty(n, dtype=np.float64)
    cdef double[::1] save_a = sa
    cdef double[::1] save_b = sb
    cdef Py_ssize_t i, t, a, b, col, r
    cdef Py_ssize_t p1 = 0, p2 = 0
    cdef double dmin2, nd2, tmp

    for i in range(n):
        _refresh_row(x, d2, i, n, d)
    dmin2 = _matrix_min(d2, n, &p1, &p2)

    for t in range(m):
        a = p1 if rnd[t, 0] < 0.5 else p2
        col = <Py_ssize_t>(rnd[t, 1] * d)
        if col > d - 1:
            col = d - 1
        b = <Py_ssize_t>(rnd[t, 2] * n)
        if b > n - 1:
            b = n - 1
        if a == b:
            continue
        tmp = x[a, col]
        x[a, col] = x[b, col]
        x[b, col] = tmp
        for i in range(n):
            save_a[i] = d2[a, i]
            save_b[i] = d2[b, i]
        _refresh_row(x, d2, a, n, d)
        _refresh_row(x, d2, b, n, d)
        nd2 = _matrix_min(d2, n, &i, &r)
        if nd2 > dmin2:
            dmin2 = nd2
            p1 = i
            p2 = r
        else:
            tmp = x[a, col]
            x[a, col] = x[b, col]
            x[b, col] = tmp
            for i in range(n):
                d2[a, i] = save_a[i]
                d2[i, a] = save_a[i]
            for i in range(n):
                d2[b, i] = save_b[i]
                d2[i, b] = save_b[i]
    return xa, float(dmin2)


def cvt_assign(generators, samples):
    """Nearest-generator assignment: per-generator hit counts and sums."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] g = np.ascontiguousarray(generators, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] y = np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0], d = g.shape[1], m = y.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sums = np.zeros((n, d), dtype=np.float64)
    cdef Py_ssize_t i, j, k, best_j
    cdef double best, acc, diff
    for i in range(m):
        best = INFINITY
        best_j = 0
        for j in range(n):
            acc = 0.0
            for k in range(d):
                diff = y[i, k] - g[j, k]
                acc += diff * diff
            if acc < best:
                best = acc
                best_j = j
        counts[best_j] += 1
        for k in range(d):
            sums[best_j, k] += y[i, k]
    return counts, sums


def cl2_pair_sum(u):
    """Pairwise product sum of the centered-L2 discrepancy closed form."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] x = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.abs(x - 0.5)
    cdef Py_ssize_t i, j, k
    cdef double total = 0.0, prod, dij
    for i in range(n):
        for j in range(n):
            prod = 1.0
            for k in range(d):
                dij = x[i, k] - x[j, k]
                if dij < 0:
                    dij = -dij
                prod *= 1.0 + 0.5 * a[i, k] + 0.5 * a[j, k] - 0.5 * dij
            total += prod
    return total
