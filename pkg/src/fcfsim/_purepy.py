"""Pure-Python/numpy implementations of the numerical kernels.

These mirror :mod:`fcfsim._kernels` function for function and are used
whenever the compiled extension is unavailable or disabled with
``FCFSIM_PURE_PYTHON=1``.
"""

import math

import numpy as np

# Scaled 1-norm ceiling for the Taylor stage of scaling-and-squaring.
SERIES_THETA = 0.5
SERIES_EPS = 2.0 ** -53
MAX_INDEX = 170
EXACT_FACTORIAL_MAX = 20


def series_terms(norm):
    """Smallest Taylor order whose remainder bound drops below ``SERIES_EPS``."""
    q = 1
    bound = norm * norm / 2.0 * math.exp(norm)
    while bound > SERIES_EPS and q < 40:
        q += 1
        bound *= norm / (q + 1)
    return q


def expm_minus_i(h, t):
    """Return ``exp(-1j * t * h)`` for a square matrix ``h``."""
    h = np.asarray(h, dtype=np.complex128)
    d = h.shape[0]
    if t == 0.0:
        return np.eye(d, dtype=np.complex128)
    x = (-1j * t) * h
    norm = float(np.max(np.sum(np.abs(x), axis=0)))
    squarings = 0
    if norm > SERIES_THETA:
        squarings = int(math.ceil(math.log2(norm / SERIES_THETA)))
    scale = 2.0 ** squarings
    x = x / scale
    q = series_terms(norm / scale)

    result = np.eye(d, dtype=np.complex128)
    term = np.eye(d, dtype=np.complex128)
    for j in range(1, q + 1):
        term = (term @ x) / j
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def _laguerre(order, alpha, x):
    # three-term recurrence for the generalized Laguerre polynomial
    if order == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 + alpha - x
    for j in range(1, order):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def fcf_overlap(m, n, b):
    """Squared displaced-oscillator overlap ``|<m|D(b/sqrt 2)|n>|**2``."""
    if m < 0 or n < 0:
        raise ValueError("level indices must be non-negative")
    if m > MAX_INDEX or n > MAX_INDEX:
        raise OverflowError(f"level index above {MAX_INDEX} overflows the factorial ratio")
    if m > n:
        m, n = n, m
    x = 0.5 * b * b
    gap = n - m
    if x == 0.0:
        return 1.0 if gap == 0 else 0.0
    lag = _laguerre(m, gap, x)
    if n <= EXACT_FACTORIAL_MAX:
        ratio = float(math.factorial(m)) / float(math.factorial(n))
        return math.exp(-x) * x ** gap * ratio * lag * lag
    logpref = -x + gap * math.log(x) + math.lgamma(m + 1) - math.lgamma(n + 1)
    return math.exp(logpref) * lag * lag


def fcf_overlap_grid(m, n, bs):
    bs = np.ascontiguousarray(bs, dtype=np.float64)
    return np.array([fcf_overlap(m, n, float(b)) for b in bs.ravel()]).reshape(bs.shape)
