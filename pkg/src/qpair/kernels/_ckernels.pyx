# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def partial_trace(double complex[:, ::1] rho, Py_ssize_t na, Py_ssize_t nb, bint over_b):
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    cdef double complex[:, ::1] out
    if over_b:
        res = np.zeros((na, na), dtype=np.complex128)
        out = res
        with nogil:
            for i in range(na):
                for j in range(na):
                    acc = 0
                    for k in range(nb):
                        acc = acc + rho[i * nb + k, j * nb + k]
                    out[i, j] = acc
    else:
        res = np.zeros((nb, nb), dtype=np.complex128)
        out = res
        with nogil:
            for i in range(nb):
                for j in range(nb):
                    acc = 0
                    for k in range(na):
                        acc = acc + rho[k * nb + i, k * nb + j]
                    out[i, j] = acc
    return res


def partial_transpose(double complex[:, ::1] rho, Py_ssize_t na, Py_ssize_t nb, bint on_b):
    cdef Py_ssize_t a1, b1, a2, b2
    res = np.empty((na * nb, na * nb), dtype=np.complex128)
    cdef double complex[:, ::1] out = res
    with nogil:
        for a1 in range(na):
            for b1 in range(nb):
                for a2 in range(na):
                    for b2 in range(nb):
                        if on_b:
                            out[a1 * nb + b1, a2 * nb + b2] = rho[a1 * nb + b2, a2 * nb + b1]
                        else:
                            out[a1 * nb + b1, a2 * nb + b2] = rho[a2 * nb + b1, a1 * nb + b2]
    return res


def sample_counts(const double[::1] cdf, key, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t n = cdf.shape[0]
    cdef uint64_t k = <uint64_t>(key & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t i
    cdef double u
    cdef double scale = 2.0 ** -53
    cdef Py_ssize_t slot
    res = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] counts = res
    with nogil:
        for i in range(<uint64_t>start + 1, <uint64_t>stop + 1):
            u = <double>(_mix(k + i * GOLDEN) >> 11) * scale
            slot = 0
            while slot < n - 1 and not (u < cdf[slot]):
                slot += 1
            counts[slot] += 1
    return res
