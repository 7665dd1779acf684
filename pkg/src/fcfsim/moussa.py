"""Ancilla-assisted expectation values and the POPS pipeline for ``f_{00,j'}``.

The ancilla starts in ``|+>`` and controls a unitary on the system. After
tracing out the system the ancilla coherence reads ``<sx> + i<sy> = Tr(rho S)``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from fcfsim._checks import (
    ConsistencyError,
    DimensionError,
    FcfSimError,
    check_square,
    require_unitary,
)
from fcfsim.lsq import LeastSquares
from fcfsim.register import (
    PAULI_X,
    PAULI_Y,
    PLUS,
    PopsPair,
    evolve,
    partial_trace_system,
    pops_state,
    projector,
    tensor,
)
from fcfsim.table import FcfTable
from fcfsim.translation import discrete_translation, step_unitaries

IDEMPOTENT_TOL = 1e-10
MIN_CONTRAST = 1e-6
SOLVE_TOL = 1e-9

# Differences f_{00,j'} - f_{00,k'} measured in the four POPS runs.
MOUSSA_PAIRS = (PopsPair(0, 1), PopsPair(0, 2), PopsPair(1, 3), PopsPair(2, 3))


def _design_matrix(pairs):
    rows = []
    for pair in pairs:
        row = np.zeros(4)
        row[pair.j] += 1.0
        row[pair.k] -= 1.0
        rows.append(row)
    rows.append(np.ones(4))
    return np.array(rows)


DESIGN = _design_matrix(MOUSSA_PAIRS)
_SOLVER = LeastSquares(DESIGN)


@dataclass(frozen=True)
class AncillaReadout:
    sx: float
    sy: float

    @property
    def value(self):
        return complex(self.sx, self.sy)


@dataclass(frozen=True)
class MoussaFcfRun:
    b: float
    pairs: tuple
    deltas: np.ndarray
    normalization: float
    solved: np.ndarray
    residual: float


def controlled_unitary(s):
    """``|0><0| (x) I + |1><1| (x) S`` on ancilla (x) system."""
    s = require_unitary("S", s)
    return block_diag(np.eye(s.shape[0]), s).astype(np.complex128)


def ancilla_readout(rho, s):
    """Run the circuit on ``|+><+| (x) rho`` and return the ancilla ``<sx>, <sy>``."""
    rho = check_square("rho", rho)
    s = check_square("S", s)
    if rho.shape != s.shape:
        raise DimensionError(f"state {rho.shape} and unitary {s.shape} differ in shape")
    joint = evolve(tensor(PLUS, rho), controlled_unitary(s))
    anc = partial_trace_system(joint, 2)
    sx = np.trace(anc @ PAULI_X)
    sy = np.trace(anc @ PAULI_Y)
    return AncillaReadout(float(sx.real), float(sy.real))


def unitary_expectation(rho, u):
    """``<U>_rho`` recovered from the ancilla as ``<sx> + i<sy>``."""
    return ancilla_readout(rho, u).value


def projection_unitary(p, theta):
    """``exp(i theta P) = I + (e^{i theta} - 1) P`` for a projector ``P``."""
    p = check_square("P", p)
    return np.eye(p.shape[0], dtype=np.complex128) + (np.exp(1j * theta) - 1.0) * p


def _check_projector(p):
    p = check_square("P", p)
    res = np.max(np.abs(p @ p - p))
    if not res < IDEMPOTENT_TOL:
        raise FcfSimError(f"P is not idempotent (residual {res:.3e})")
    return p


def _contrast(theta):
    c = 1.0 - math.cos(theta)
    if c < MIN_CONTRAST:
        raise FcfSimError(f"theta={theta} is too close to a multiple of 2*pi")
    return c


def projection_from_readout(sx, trace, theta):
    """Invert ``<sx> = Tr(rho) - (1 - cos theta) <P>``."""
    return (trace - sx) / _contrast(theta)


def projection_expectation(rho, p, theta=math.pi):
    """``<P>_rho`` from the ancilla ``<sx>`` after a controlled ``exp(i theta P)``.

    For a normalized state this is ``(1 - <sx>) / (1 - cos theta)``. The
    trace of ``rho`` replaces the leading 1 so that traceless POPS inputs give
    the difference of the two populations directly.
    """
    p = _check_projector(p)
    _contrast(theta)
    rho = check_square("rho", rho)
    readout = ancilla_readout(rho, projection_unitary(p, theta))
    return projection_from_readout(readout.sx, float(np.trace(rho).real), theta)


def hermitian_compatible_expectation(rho, a_diag, theta):
    """``<A>`` from the ancilla phase for a pure state diagonal in ``A``'s eigenbasis.

    The controlled ``exp(i theta A)`` leaves the ancilla with coherence
    ``exp(i <A> theta)``, so ``<A> = arg(<sx> + i<sy>) / theta``.
    """
    rho = check_square("rho", rho)
    a_diag = check_square("A_d", a_diag)
    if rho.shape != a_diag.shape:
        raise DimensionError(f"state {rho.shape} and observable {a_diag.shape} differ in shape")
    if np.max(np.abs(a_diag - np.diag(np.diag(a_diag)))) > 0:
        raise FcfSimError("A_d must be diagonal")
    off = rho - np.diag(np.diag(rho))
    if np.linalg.norm(off) >= 1e-10:
        raise FcfSimError("state is not diagonal in the eigenbasis of A_d")
    if abs(np.trace(rho @ rho) - 1.0) > 1e-10 or abs(np.trace(rho) - 1.0) > 1e-10:
        raise FcfSimError("state must be pure")
    eig = np.diag(a_diag)
    if np.max(np.abs(eig.imag)) > 1e-12:
        raise FcfSimError("A_d must be Hermitian")
    if theta == 0 or np.max(np.abs(eig.real)) * abs(theta) >= math.pi:
        raise FcfSimError("phase readout is ambiguous: need 0 < max|A| * |theta| < pi")
    s = np.diag(np.exp(1j * theta * eig.real))
    z = unitary_expectation(rho, s)
    return math.atan2(z.imag, z.real) / theta


def pops_readouts(u, theta=math.pi, pairs=MOUSSA_PAIRS):
    """Ancilla ``<sx>`` for each translated POPS input, measuring ``P_00``."""
    d = u.shape[0]
    if d != 4:
        raise DimensionError(f"the POPS pipeline runs on a 2-qubit system, got dimension {d}")
    s = projection_unitary(projector(0, d), theta)
    return np.array([ancilla_readout(evolve(pops_state(pr, 2), u), s).sx for pr in pairs])


def deltas_from_readouts(sx, theta=math.pi):
    """POPS inputs are traceless, so ``Delta f = -<sx> / (1 - cos theta)``."""
    return projection_from_readout(np.asarray(sx, dtype=float), 0.0, theta)


def solve_fcfs(deltas, normalization):
    """Least-squares ``f_{00,j'}`` from four differences and their sum ``F``.

    ``deltas`` has shape ``(..., 4)``; ``normalization`` broadcasts against ``deltas[..., 0]``.
    """
    deltas = np.asarray(deltas, dtype=float)
    norm = np.broadcast_to(np.asarray(normalization, dtype=float), deltas.shape[:-1])
    rhs = np.concatenate([deltas, norm[..., None]], axis=-1)
    x = _SOLVER.solve(rhs)
    return x, _SOLVER.residual(x, rhs)


def _check_normalization(f):
    if not 0.0 < f <= 1.0 + 1e-12:
        raise FcfSimError(f"normalization F must lie in (0, 1], got {f}")
    return float(f)


def _resolve_normalization(normalization, b):
    return _check_normalization(normalization(b) if callable(normalization) else normalization)


def fcf_via_moussa(plan, k, normalization=1.0, theta=math.pi, unitary=None):
    """Solve for ``f_{00,j'}(b0 k / N)``, ``j = 0..3``, from the four POPS runs.

    ``normalization`` is either the number ``F`` or a callable ``b -> F``.
    """
    if plan.dim != 4:
        raise DimensionError(f"the POPS pipeline needs dim=4, got {plan.dim}")
    if unitary is None:
        unitary = discrete_translation(plan, k)
    b = plan.displacement(k)
    f = _resolve_normalization(normalization, b)
    deltas = deltas_from_readouts(pops_readouts(unitary, theta), theta)
    solved, residual = solve_fcfs(deltas, f)
    if residual > SOLVE_TOL:
        raise ConsistencyError(f"noiseless POPS system is inconsistent (residual {residual:.3e})")
    return MoussaFcfRun(b, MOUSSA_PAIRS, deltas, f, solved, float(residual))


def moussa_sweep(plan, normalization=1.0, theta=math.pi):
    """All ``k = 0..N`` runs; the stepped translation is built once."""
    runs = []
    for k, u in enumerate(step_unitaries(plan)):
        runs.append(fcf_via_moussa(plan, k, normalization, theta, unitary=u))
    return runs


def moussa_table(plan, normalization=1.0, theta=math.pi):
    table = FcfTable()
    for run in moussa_sweep(plan, normalization, theta):
        for j, value in enumerate(run.solved):
            table.add(0, j, run.b, value, "moussa")
    return table
