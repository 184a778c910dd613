# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels: fused loops over (N, d) point blocks.

Semantics match ``_kernels_py`` exactly; see that module for the
reference implementations.
"""

import numpy as np

cimport cython
from libc.math cimport atan2, sqrt


def min_slack(const double[:, ::1] X, const double[:, ::1] M):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t m = M.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double best, dot
    for i in range(n):
        best = 1e308
        for j in range(m):
            dot = 0.0
            for k in range(d):
                dot += X[i, k] * M[j, k]
            if dot < best:
                best = dot
        out[i] = best
    return out_arr


def max_dot(const double[:, ::1] X, const double[:, ::1] M):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    cdef Py_ssize_t m = M.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, k
    cdef double best, dot
    for i in range(n):
        best = -1e308
        for j in range(m):
            dot = 0.0
            for k in range(d):
                dot += X[i, k] * M[j, k]
            if dot > best:
                best = dot
        out[i] = best
    return out_arr


def angles_to_point(const double[:, ::1] X, const double[::1] p):
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t d = X.shape[1]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double c, s2, t
    for i in range(n):
        c = 0.0
        for k in range(d):
            c += X[i, k] * p[k]
        s2 = 0.0
        for k in range(d):
            t = X[i, k] - c * p[k]
            s2 += t * t
        out[i] = atan2(sqrt(s2), c)
    return out_arr
