"""Emulated qubit register: level encoding, pseudopure/POPS inputs, density-matrix algebra.

Levels map to computational basis states big-endian, so level 3 on three
qubits is ``|011>``. Pseudopure states are modelled by their ideal pure
counterpart; the identity background carries no signal.
"""

from dataclasses import dataclass

import numpy as np

from fcfsim._checks import (
    DimensionError,
    FcfSimError,
    HERMITIAN_TOL,
    check_square,
    require_unitary,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PLUS = np.full((2, 2), 0.5, dtype=np.complex128)


def _check_qubits(num_qubits):
    if isinstance(num_qubits, bool) or int(num_qubits) != num_qubits or num_qubits < 1:
        raise DimensionError(f"num_qubits must be a positive integer, got {num_qubits!r}")
    return int(num_qubits)


def basis_label(n, num_qubits):
    return format(n, f"0{num_qubits}b")


def projector(n, d):
    rho = np.zeros((d, d), dtype=np.complex128)
    rho[n, n] = 1.0
    return rho


def encode_level(n, num_qubits):
    """Pure-state density matrix ``|n><n|`` on ``num_qubits`` qubits."""
    num_qubits = _check_qubits(num_qubits)
    d = 2**num_qubits
    if isinstance(n, bool) or int(n) != n or not 0 <= n < d:
        raise FcfSimError(f"level {n!r} does not fit in {num_qubits} qubits")
    return projector(int(n), d)


@dataclass(frozen=True)
class PopsPair:
    """Pair of pseudopure states ``|j><j| - |k><k|``."""

    j: int
    k: int

    def __post_init__(self):
        if self.j == self.k:
            raise FcfSimError(f"POPS pair needs two distinct levels, got j = k = {self.j}")
        if self.j < 0 or self.k < 0:
            raise FcfSimError("POPS levels must be non-negative")


def pops_state(pair, num_qubits):
    """Traceless mixture ``|j><j| - |k><k|``."""
    return encode_level(pair.j, num_qubits) - encode_level(pair.k, num_qubits)


def tensor(a, b):
    return np.kron(check_square("a", a), check_square("b", b))


def partial_trace_system(rho, ancilla_dim=2):
    """Trace out everything after the leading ``ancilla_dim``-level factor."""
    rho = check_square("rho", rho)
    total = rho.shape[0]
    if total % ancilla_dim:
        raise DimensionError(f"dimension {total} is not divisible by ancilla dimension {ancilla_dim}")
    sys_dim = total // ancilla_dim
    return np.einsum("ajbj->ab", rho.reshape(ancilla_dim, sys_dim, ancilla_dim, sys_dim))


def expectation(rho, op):
    """``Tr(rho op)``."""
    rho = check_square("rho", rho)
    op = check_square("operator", op)
    if rho.shape != op.shape:
        raise DimensionError(f"state {rho.shape} and operator {op.shape} differ in shape")
    return complex(np.einsum("ij,ji->", rho, op))


def evolve(rho, u):
    """``U rho U^dag``; ``U`` must be unitary."""
    rho = check_square("rho", rho)
    u = require_unitary("U", u)
    if rho.shape != u.shape:
        raise DimensionError(f"state {rho.shape} and unitary {u.shape} differ in shape")
    return u @ rho @ u.conj().T


def is_valid_state(rho, traceless=False, tol=HERMITIAN_TOL):
    rho = np.asarray(rho)
    herm = np.max(np.abs(rho - rho.conj().T)) < tol
    target = 0.0 if traceless else 1.0
    return bool(herm and abs(np.trace(rho) - target) < 1e-10)
