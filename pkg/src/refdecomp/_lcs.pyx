# cython: boundscheck=False, wraparound=False
"""Compiled LCS-length kernel over integer id sequences."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def lcs_length(a, b):
    """Length of the longest common subsequence of two int sequences."""
    cdef cnp.ndarray[cnp.int32_t, ndim=1] aa = np.asarray(a, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] bb = np.asarray(b, dtype=np.int32)
    return _lcs(aa, bb)


cdef int _lcs(cnp.int32_t[::1] a, cnp.int32_t[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    if n == 0 or m == 0:
        return 0
    cdef cnp.ndarray[cnp.int32_t, ndim=1] prev_arr = np.zeros(m + 1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cur_arr = np.zeros(m + 1, dtype=np.int32)
    cdef cnp.int32_t[::1] prev = prev_arr
    cdef cnp.int32_t[::1] cur = cur_arr
    cdef cnp.int32_t[::1] tmp
    cdef Py_ssize_t i, j
    cdef cnp.int32_t v, ai
    for i in range(n):
        ai = a[i]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                v = prev[j - 1] + 1
            else:
                v = cur[j - 1]
                if prev[j] > v:
                    v = prev[j]
            cur[j] = v
        tmp = prev
        prev = cur
        cur = tmp
    return prev[m]
