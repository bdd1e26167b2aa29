# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-bin correlation kernels.

Same contract as :mod:`eombias._kernels_py`. Sums run sequentially in sample
order, so results can differ from the numpy fallback in the last few ulps.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def bin_sums(const double[::1] x, const double[::1] cos_t, const double[::1] sin_t):
    """Return ``(sum(x * cos_t), sum(x * sin_t))``."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t j
    cdef double acc_c = 0.0
    cdef double acc_s = 0.0
    if cos_t.shape[0] != n or sin_t.shape[0] != n:
        raise ValueError("table length does not match sample count")
    with nogil:
        for j in range(n):
            acc_c += x[j] * cos_t[j]
            acc_s += x[j] * sin_t[j]
    return acc_c, acc_s


def harmonic_pair_batch(const double[::1] clean, const double[:, ::1] noise,
                        const double[::1] sin1, const double[::1] cos2):
    """Correlate ``clean + noise[r]`` with ``sin1`` and ``cos2`` for every row r."""
    cdef Py_ssize_t rows = noise.shape[0]
    cdef Py_ssize_t n = noise.shape[1]
    cdef Py_ssize_t i, j
    cdef double v, acc1, acc2
    if clean.shape[0] != n or sin1.shape[0] != n or cos2.shape[0] != n:
        raise ValueError("table length does not match sample count")
    out1 = np.empty(rows, dtype=np.float64)
    out2 = np.empty(rows, dtype=np.float64)
    cdef double[::1] o1 = out1
    cdef double[::1] o2 = out2
    with nogil:
        for i in range(rows):
            acc1 = 0.0
            acc2 = 0.0
            for j in range(n):
                v = clean[j] + noise[i, j]
                acc1 += v * sin1[j]
                acc2 += v * cos2[j]
            o1[i] = acc1
            o2[i] = acc2
    return out1, out2
