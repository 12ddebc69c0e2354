# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython blade kernels. Semantics identical to ``_blade_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline int _popcount(long x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef int _blade_sign(long I, long J, int p) nogil:
    cdef int sign = 1
    cdef long acc = I
    cdef int j = 0
    cdef long Jrest = J
    while Jrest:
        if Jrest & 1:
            if _popcount(acc >> (j + 1)) & 1:
                sign = -sign
            if acc & (<long>1 << j):
                if j >= p:
                    sign = -sign
            acc ^= <long>1 << j
        Jrest >>= 1
        j += 1
    return sign


def blade_sign(I, J, p):
    return _blade_sign(<long>I, <long>J, <int>p)


def gp_dense(
    cnp.ndarray[cnp.int64_t, ndim=1] keys_a,
    cnp.ndarray[cnp.complex128_t, ndim=1] vals_a,
    cnp.ndarray[cnp.int64_t, ndim=1] keys_b,
    cnp.ndarray[cnp.complex128_t, ndim=1] vals_b,
    int p,
    int n,
):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(1 << n, dtype=np.complex128)
    cdef Py_ssize_t ia, ib
    cdef long ka, kb
    cdef double complex va
    for ia in range(keys_a.shape[0]):
        ka = keys_a[ia]
        va = vals_a[ia]
        for ib in range(keys_b.shape[0]):
            kb = keys_b[ib]
            out[ka ^ kb] = out[ka ^ kb] + _blade_sign(ka, kb, p) * va * vals_b[ib]
    return out
