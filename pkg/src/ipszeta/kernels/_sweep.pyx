# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled two-site update sweep; contract identical to the numpy fallback."""

import numpy as np


def sweep(vec, local, Py_ssize_t n_sites, Py_ssize_t tail=1):
    out = np.array(vec, dtype=np.complex128, copy=True).reshape(-1)
    q = np.array(local, dtype=np.complex128, order="C", copy=True)
    cdef double complex[::1] a = out
    cdef double complex[:, ::1] m = q
    # the right-site value j selects a 2x2 block acting on the left site
    cdef double complex m000 = m[0, 0], m001 = m[0, 2]
    cdef double complex m010 = m[2, 0], m011 = m[2, 2]
    cdef double complex m100 = m[1, 1], m101 = m[1, 3]
    cdef double complex m110 = m[3, 1], m111 = m[3, 3]
    cdef Py_ssize_t total = a.shape[0]
    cdef Py_ssize_t x, inner, base, t
    cdef Py_ssize_t i00, i01, i10, i11
    cdef double complex v0, v1
    with nogil:
        for x in range(n_sites - 1):
            inner = (1 << (n_sites - 2 - x)) * tail
            base = 0
            while base < total:
                for t in range(inner):
                    i00 = base + t
                    i01 = i00 + inner
                    i10 = i01 + inner
                    i11 = i10 + inner
                    v0 = a[i00]
                    v1 = a[i10]
                    a[i00] = m000 * v0 + m001 * v1
                    a[i10] = m010 * v0 + m011 * v1
                    v0 = a[i01]
                    v1 = a[i11]
                    a[i01] = m100 * v0 + m101 * v1
                    a[i11] = m110 * v0 + m111 * v1
                base += 4 * inner
    return out
