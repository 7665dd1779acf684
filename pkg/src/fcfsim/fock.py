"""Truncated Fock-space operators for a unit-mass, unit-frequency oscillator.

All operators are dense ``complex128`` arrays in the number basis
``|0>, ..., |d-1>`` with hbar = 1.
"""

import numpy as np

from fcfsim import _backend
from fcfsim._checks import check_dim, check_finite, require_hermitian


def build_annihilation(d):
    """Lowering operator ``a`` with ``a|n> = sqrt(n)|n-1>``."""
    d = check_dim(d)
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1).astype(np.complex128)


def build_creation(d):
    return build_annihilation(d).conj().T


def build_number(d):
    d = check_dim(d)
    return np.diag(np.arange(d, dtype=float)).astype(np.complex128)


def build_position(d):
    """Position operator ``x = (a + a^dag) / sqrt(2)``."""
    a = build_annihilation(d)
    return (a + a.conj().T) / np.sqrt(2.0)


def build_momentum(d):
    """Momentum operator ``p = -i (a - a^dag) / sqrt(2)``."""
    a = build_annihilation(d)
    return -1j * (a - a.conj().T) / np.sqrt(2.0)


def build_hamiltonians(d, b, delta_e=0.0):
    """Return ``(H1, H2)`` for the reference and displaced harmonic wells.

    ``H1 = N + 1/2`` and ``H2 = N + 1/2 + b**2/2 - b (a + a^dag)/sqrt(2) + delta_e``.
    """
    d = check_dim(d)
    b = check_finite("b", b)
    delta_e = check_finite("delta_e", delta_e)
    eye = np.eye(d, dtype=np.complex128)
    h1 = build_number(d) + 0.5 * eye
    h2 = h1 + (0.5 * b * b + delta_e) * eye - b * build_position(d)
    return h1, h2


def matrix_exponential(a, t):
    """Return ``exp(-i a t)`` for Hermitian ``a``.

    Uses scaling-and-squaring around a truncated Taylor series; the series
    order is picked from the scaled 1-norm so the remainder stays below
    double-precision round-off. ``t == 0`` returns the identity exactly.

    Raises:
        NotHermitianError: if ``a`` deviates from its adjoint by 1e-12 or more.
    """
    a = require_hermitian("generator", a)
    t = check_finite("t", t)
    return _backend.expm_minus_i(a, t)
