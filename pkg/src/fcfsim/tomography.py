"""Diagonal density-matrix tomography by small-flip-angle linear detection.

A gradient pulse kills the coherences, a small ``y`` rotation turns each
population difference across a single-quantum transition into a line
intensity, and the populations are recovered from the 12 line intensities
plus a unit-trace row by an overdetermined least-squares solve.
"""

import csv
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from fcfsim._checks import ConsistencyError, DimensionError, FcfSimError, check_square
from fcfsim.lsq import LeastSquares
from fcfsim.register import encode_level, evolve
from fcfsim.table import FcfTable, fmt
from fcfsim.translation import step_unitaries

DEFAULT_FLIP_ANGLE = math.radians(6.0)
RANGE_EPS = 1e-6


@dataclass(frozen=True)
class ConstraintMatrix:
    """Map from the ``2**q`` populations to line intensities plus the trace.

    ``labels[i]`` names row ``i``: ``"spin{s}|{spectators}"`` for the
    transition of spin ``s`` (1 = most significant qubit) with the other
    spins fixed, and ``"trace"`` for the final row.
    """

    matrix: np.ndarray
    labels: tuple
    flip_angle: float
    num_qubits: int
    solver: LeastSquares = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "solver", LeastSquares(self.matrix))

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def rank(self):
        return self.solver.rank

    @property
    def transition_rows(self):
        return self.matrix[:-1]


def detection_factor(flip_angle):
    """First-order amplitude of a population difference after a small rotation."""
    return math.sin(flip_angle)


def build_constraint_matrix(num_qubits=3, flip_angle=DEFAULT_FLIP_ANGLE):
    """Build the 13x8 constraint matrix for three qubits.

    Every transition row carries ``+1`` on the lower (spin bit 0) level and
    ``-1`` on the upper level, scaled by the detection factor relative to the
    equilibrium reference so noiseless normalized intensities are exactly the
    population differences.
    """
    if num_qubits != 3:
        raise DimensionError(f"only the 3-qubit register is supported, got {num_qubits}")
    if not 0 < flip_angle < math.pi / 4:
        raise FcfSimError(f"flip angle must lie in (0, pi/4), got {flip_angle}")
    d = 2**num_qubits
    # the equilibrium reference is read out with the same pulse
    reference = detection_factor(flip_angle)
    scale = detection_factor(flip_angle) / reference
    rows, labels = [], []
    for spin in range(1, num_qubits + 1):
        bit = num_qubits - spin
        for spectators in product((0, 1), repeat=num_qubits - 1):
            others = list(spectators)
            others.insert(spin - 1, 0)
            lower = int("".join(map(str, others)), 2)
            upper = lower | (1 << bit)
            row = np.zeros(d)
            row[lower] = scale
            row[upper] = -scale
            rows.append(row)
            labels.append(f"spin{spin}|{''.join(map(str, spectators))}")
    rows.append(np.ones(d))
    labels.append("trace")
    return ConstraintMatrix(np.array(rows), tuple(labels), float(flip_angle), num_qubits)


def dephase(rho):
    """Drop every coherence, keeping the populations untouched."""
    rho = check_square("rho", rho)
    return np.diag(np.diag(rho))


def detect(rho_diag, cm):
    """Normalized intensities ``r = M diag(rho)``; the last entry is the trace."""
    rho_diag = check_square("rho", rho_diag)
    if rho_diag.shape[0] != cm.shape[1]:
        raise DimensionError(f"state dimension {rho_diag.shape[0]} does not match {cm.shape[1]} populations")
    if np.any(rho_diag - np.diag(np.diag(rho_diag))):
        raise FcfSimError("detect expects a dephased (diagonal) state")
    return cm.matrix @ np.diag(rho_diag).real


def reconstruct_diagonal(r, cm):
    """Minimum-residual populations from intensities of shape ``(..., 13)``."""
    r = np.asarray(r, dtype=float)
    if r.shape[-1] != cm.shape[0]:
        raise DimensionError(f"expected {cm.shape[0]} intensities, got {r.shape[-1]}")
    return cm.solver.solve(r)


def sweep_intensities(plan, initial_level, cm):
    """Noiseless intensities for every ``k``, shape ``(N + 1, 13)``."""
    if plan.dim != 2**cm.num_qubits:
        raise DimensionError(f"plan dimension {plan.dim} does not match the {cm.num_qubits}-qubit register")
    rho0 = encode_level(initial_level, cm.num_qubits)
    return np.array([detect(dephase(evolve(rho0, u)), cm) for u in step_unitaries(plan)])


def fcf_via_tomography(plan, initial_level, cm=None, max_level=3):
    """Rows ``f_{m,n'}(b)`` for ``m <= max_level`` from the full readout pipeline."""
    if not 0 <= initial_level <= 3:
        raise FcfSimError(f"initial level must be in 0..3, got {initial_level}")
    cm = cm or build_constraint_matrix()
    r = sweep_intensities(plan, initial_level, cm)
    pops = reconstruct_diagonal(r, cm)
    bad = (pops < -RANGE_EPS) | (pops > 1 + RANGE_EPS)
    if np.any(bad):
        raise ConsistencyError(f"noiseless populations out of range: {pops[bad]}")
    table = FcfTable()
    for k, row in enumerate(pops):
        for m in range(max_level + 1):
            table.add(m, initial_level, plan.displacement(k), row[m], "tomography")
    return table


def tomography_table(plan, levels=(0, 1, 2, 3), cm=None):
    cm = cm or build_constraint_matrix()
    table = FcfTable()
    for n in levels:
        table.extend(fcf_via_tomography(plan, n, cm))
    return table


def write_constraint_csv(path, cm):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["row"] + [f"p{j}" for j in range(cm.shape[1])])
        for label, row in zip(cm.labels, cm.matrix):
            writer.writerow([label] + [fmt(v) for v in row])
