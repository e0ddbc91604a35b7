# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Poisson-Binomial convolution and counter-based draws.

Must stay bit-identical with ``_pykernels``; the test-suite compares them.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef double TWO_NEG53 = 1.0 / 9007199254740992.0


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def pb_pmf(const double[::1] probs):
    cdef Py_ssize_t n = probs.shape[0]
    cdef Py_ssize_t i, k
    cdef double p, q
    out = np.zeros(n + 1, dtype=np.float64)
    cdef double[::1] f = out
    f[0] = 1.0
    with nogil:
        for i in range(n):
            p = probs[i]
            q = 1.0 - p
            # in place, high index first so f[k-1] is still the old value
            f[i + 1] = f[i] * p
            for k in range(i, 0, -1):
                f[k] = f[k] * q + f[k - 1] * p
            f[0] = f[0] * q
    return out


def draw_counts(const double[::1] probs, uint64_t seed, int64_t start, int64_t stop):
    cdef Py_ssize_t n = probs.shape[0]
    cdef int64_t m = stop - start
    cdef int64_t r
    cdef Py_ssize_t i
    cdef uint64_t seed_key = mix64(seed + GAMMA)
    cdef uint64_t rep_key
    cdef int64_t c
    out = np.empty(m if m > 0 else 0, dtype=np.int64)
    cdef int64_t[::1] counts = out
    with nogil:
        for r in range(m):
            rep_key = mix64(seed_key + <uint64_t>(start + r + 1) * GAMMA)
            c = 0
            for i in range(n):
                if <double>(mix64(rep_key + <uint64_t>(i + 1) * GAMMA) >> 11) * TWO_NEG53 < probs[i]:
                    c += 1
            counts[r] = c
    return out
