"""Reference Franck-Condon factors for two identical, displaced harmonic wells."""

import math

import numpy as np

from fcfsim import _backend
from fcfsim._checks import FcfSimError, check_finite

# (m, n) -> polynomial factor multiplying exp(-b**2/2), for m <= n <= 3.
_CLOSED_FORMS = {
    (0, 0): lambda b: 1.0,
    (0, 1): lambda b: b**2 / 2,
    (0, 2): lambda b: b**4 / 8,
    (0, 3): lambda b: b**6 / 48,
    (1, 1): lambda b: (b**2 - 2) ** 2 / 4,
    (1, 2): lambda b: (b**3 - 4 * b) ** 2 / 16,
    (1, 3): lambda b: (b**4 - 6 * b**2) ** 2 / 96,
    (2, 2): lambda b: (b**4 - 8 * b**2 + 8) ** 2 / 64,
    (2, 3): lambda b: (b**5 - 12 * b**3 + 24 * b) ** 2 / 384,
    (3, 3): lambda b: (b**6 - 18 * b**4 + 72 * b**2 - 48) ** 2 / 2304,
}

TABULATED_PAIRS = tuple(sorted(_CLOSED_FORMS))

# Classical turning points beyond which the overlap is pure tunnelling.
TURNING_POINTS = {(0, 0): 2.0, (0, 1): 1.0 + math.sqrt(3.0)}


def _check_levels(m, n):
    for name, v in (("m", m), ("n", n)):
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise FcfSimError(f"{name} must be a non-negative integer, got {v!r}")
    return int(m), int(n)


def fcf_closed_form(m, n, b):
    """Tabulated closed form ``f_{m,n'}(b)`` for levels 0-3.

    ``f_{m,n'} = f_{n,m'}`` covers the lower triangle.
    """
    m, n = _check_levels(m, n)
    if m > 3 or n > 3:
        raise FcfSimError(f"closed forms exist only for levels <= 3, got ({m}, {n})")
    b = check_finite("b", b)
    key = (m, n) if m <= n else (n, m)
    return math.exp(-b * b / 2) * _CLOSED_FORMS[key](b)


def fcf_oracle(m, n, b):
    """Displaced-oscillator FCF from the associated Laguerre closed form.

    For ``n >= m`` and ``x = b**2 / 2``::

        f = exp(-x) x**(n-m) (m!/n!) [L_m^(n-m)(x)]**2

    Valid for any ``m, n <= 170``.
    """
    m, n = _check_levels(m, n)
    b = check_finite("b", b)
    return _backend.fcf_overlap(m, n, b)


def fcf_oracle_grid(m, n, bs):
    m, n = _check_levels(m, n)
    return _backend.fcf_overlap_grid(m, n, np.asarray(bs, dtype=float))


def four_level_norm(b):
    """Total weight of ``|0>`` on the lowest four displaced levels."""
    b = check_finite("b", b)
    return (1 + b**2 / 2 + b**4 / 8 + b**6 / 48) * math.exp(-b * b / 2)


def in_forbidden_region(m, n, b):
    """True when ``b`` lies beyond the classical turning point for ``(m, n)``."""
    key = (m, n) if m <= n else (n, m)
    tp = TURNING_POINTS.get(key)
    return tp is not None and b >= tp - 1e-12
