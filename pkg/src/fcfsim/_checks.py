"""Shared numerical tolerances, exceptions and validation helpers."""

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


class FcfSimError(ValueError):
    """Base class for invalid inputs to the simulation toolkit."""


class DimensionError(FcfSimError):
    pass


class NotHermitianError(FcfSimError):
    pass


class NotUnitaryError(FcfSimError):
    pass


class ConsistencyError(FcfSimError):
    """An internal consistency check (residual, range) failed."""


def check_dim(d):
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)) or d < 2:
        raise DimensionError(f"basis dimension must be an integer >= 2, got {d!r}")
    return int(d)


def check_finite(name, value):
    if not np.isfinite(value):
        raise FcfSimError(f"{name} must be finite, got {value!r}")
    return float(value)


def check_square(name, a):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be a square matrix, got shape {a.shape}")
    return a


def hermitian_residual(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def unitary_residual(u):
    u = np.asarray(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def is_hermitian(a, tol=HERMITIAN_TOL):
    return hermitian_residual(a) < tol


def is_unitary(u, tol=UNITARY_TOL):
    return unitary_residual(u) < tol


def require_hermitian(name, a, tol=HERMITIAN_TOL):
    a = check_square(name, a)
    res = hermitian_residual(a)
    if not res < tol:
        raise NotHermitianError(f"{name} is not Hermitian (residual {res:.3e})")
    return a


def require_unitary(name, u, tol=UNITARY_TOL):
    u = check_square(name, u)
    res = unitary_residual(u)
    if not res < tol:
        raise NotUnitaryError(f"{name} is not unitary (residual {res:.3e})")
    return u
