# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: small dense matrix exponential and displaced-oscillator overlaps."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, lgamma, ceil, log2, fabs, sqrt

cnp.import_array()

cdef double SERIES_THETA = 0.5
cdef double SERIES_EPS = 2.0 ** -53
cdef int MAX_INDEX = 170
cdef int EXACT_FACTORIAL_MAX = 20

cdef double[21] _FACT
_FACT[0] = 1.0
for _i in range(1, 21):
    _FACT[_i] = _FACT[_i - 1] * _i


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


cdef void _matmul(double complex[:, ::1] a, double complex[:, ::1] b,
                  double complex[:, ::1] out, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double complex aik
    for i in range(d):
        for j in range(d):
            out[i, j] = 0
        for k in range(d):
            aik = a[i, k]
            if aik.real == 0 and aik.imag == 0:
                continue
            for j in range(d):
                out[i, j] = out[i, j] + aik * b[k, j]


cpdef int series_terms(double norm):
    cdef int q = 1
    cdef double bound = norm * norm / 2.0 * exp(norm)
    while bound > SERIES_EPS and q < 40:
        q += 1
        bound *= norm / (q + 1)
    return q


def expm_minus_i(h, double t):
    """Return ``exp(-1j * t * h)`` for a square matrix ``h``."""
    cdef double complex[:, ::1] hv = np.ascontiguousarray(h, dtype=np.complex128)
    cdef Py_ssize_t d = hv.shape[0]
    cdef Py_ssize_t i, j, s
    result_arr = np.eye(d, dtype=np.complex128)
    if t == 0.0:
        return result_arr
    x_arr = np.empty((d, d), dtype=np.complex128)
    term_arr = np.eye(d, dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] x = x_arr
    cdef double complex[:, ::1] result = result_arr
    cdef double complex[:, ::1] term = term_arr
    cdef double complex[:, ::1] tmp = tmp_arr
    cdef double complex minus_it = -1j * t
    cdef double norm = 0.0, colsum, scale
    cdef int squarings = 0, q, n

    with nogil:
        for j in range(d):
            colsum = 0.0
            for i in range(d):
                x[i, j] = minus_it * hv[i, j]
                colsum += _cabs(x[i, j])
            if colsum > norm:
                norm = colsum
        if norm > SERIES_THETA:
            squarings = <int>ceil(log2(norm / SERIES_THETA))
        scale = 2.0 ** squarings
        for i in range(d):
            for j in range(d):
                x[i, j] = x[i, j] / scale
    q = series_terms(norm / scale)

    with nogil:
        for n in range(1, q + 1):
            _matmul(term, x, tmp, d)
            for i in range(d):
                for j in range(d):
                    term[i, j] = tmp[i, j] / n
                    result[i, j] = result[i, j] + term[i, j]
        for s in range(squarings):
            _matmul(result, result, tmp, d)
            for i in range(d):
                for j in range(d):
                    result[i, j] = tmp[i, j]
    return result_arr


cdef double _laguerre(int order, int alpha, double x) noexcept nogil:
    cdef double prev, cur, nxt
    cdef int j
    if order == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 + alpha - x
    for j in range(1, order):
        nxt = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
        prev = cur
        cur = nxt
    return cur


cdef double _overlap(int m, int n, double b) noexcept nogil:
    cdef int gap, tmp
    cdef double x, lag
    if m > n:
        tmp = m
        m = n
        n = tmp
    x = 0.5 * b * b
    gap = n - m
    if x == 0.0:
        return 1.0 if gap == 0 else 0.0
    lag = _laguerre(m, gap, x)
    if n <= EXACT_FACTORIAL_MAX:
        return exp(-x) * x ** gap * (_FACT[m] / _FACT[n]) * lag * lag
    return exp(-x + gap * log(x) + lgamma(m + 1) - lgamma(n + 1)) * lag * lag


def _check_indices(int m, int n):
    if m < 0 or n < 0:
        raise ValueError("level indices must be non-negative")
    if m > MAX_INDEX or n > MAX_INDEX:
        raise OverflowError(f"level index above {MAX_INDEX} overflows the factorial ratio")


def fcf_overlap(int m, int n, double b):
    """Squared displaced-oscillator overlap ``|<m|D(b/sqrt 2)|n>|**2``."""
    _check_indices(m, n)
    return _overlap(m, n, b)


def fcf_overlap_grid(int m, int n, bs):
    _check_indices(m, n)
    flat = np.ascontiguousarray(bs, dtype=np.float64).ravel()
    out_arr = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] bv = flat
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(bv.shape[0]):
            out[i] = _overlap(m, n, bv[i])
    return out_arr.reshape(np.shape(bs))
