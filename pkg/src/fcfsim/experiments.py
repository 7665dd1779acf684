"""Sweeps and studies that turn the building blocks into figure-ready tables."""

import math
from dataclasses import dataclass

import numpy as np

from fcfsim._checks import ConsistencyError, DimensionError
from fcfsim.analytic import TABULATED_PAIRS, fcf_closed_form, fcf_oracle, four_level_norm
from fcfsim.moussa import deltas_from_readouts, moussa_table, pops_readouts, solve_fcfs
from fcfsim.noise import MOUSSA_STREAM, TOMOGRAPHY_STREAM, NoiseConfig, inject_noise
from fcfsim.table import FcfTable
from fcfsim.tomography import (
    build_constraint_matrix,
    reconstruct_diagonal,
    sweep_intensities,
    tomography_table,
)
from fcfsim.translation import TranslationPlan, direct_fcf_matrix, step_unitaries, translation_unitary

MAX_LEVEL = 3


def reference_value(m, n, b):
    """Infinite-basis FCF: tabulated form where available, Laguerre oracle otherwise."""
    if m <= MAX_LEVEL and n <= MAX_LEVEL:
        return fcf_closed_form(m, n, b)
    return fcf_oracle(m, n, b)


def analytic_table(plan):
    table = FcfTable()
    for m, n in TABULATED_PAIRS:
        for b in plan.grid():
            table.add(m, n, b, fcf_closed_form(m, n, b), "analytic")
    return table


def direct_table(plan, max_level=MAX_LEVEL):
    """Truncated-basis FCFs read straight from the stepped translation columns."""
    top = min(max_level, plan.dim - 1)
    table = FcfTable()
    for k, u in enumerate(step_unitaries(plan)):
        f = direct_fcf_matrix(u)
        for n in range(top + 1):
            for m in range(top + 1):
                table.add(m, n, plan.displacement(k), f[m, n], "direct")
    return table


def normalization_for(mode):
    return four_level_norm if mode == "fourLevel" else 1.0


def noisy_tomography_table(plan, noise, levels=(0, 1, 2, 3)):
    """One noisy realization of the tomography sweep."""
    cm = build_constraint_matrix()
    table = FcfTable()
    for n in levels:
        r = inject_noise(sweep_intensities(plan, n, cm), noise, (0, TOMOGRAPHY_STREAM, n))
        pops = reconstruct_diagonal(r, cm)
        for k, row in enumerate(pops):
            for m in range(MAX_LEVEL + 1):
                table.add(m, n, plan.displacement(k), row[m], "tomography")
    return table


def noisy_moussa_table(plan, noise, normalization=1.0, theta=math.pi):
    """One noisy realization of the POPS sweep."""
    sx = np.stack([pops_readouts(u, theta) for u in step_unitaries(plan)])
    sx = inject_noise(sx, noise, (0, MOUSSA_STREAM, 0))
    norms = [normalization(b) if callable(normalization) else normalization for b in plan.grid()]
    solved, _ = solve_fcfs(deltas_from_readouts(sx, theta), norms)
    table = FcfTable()
    for k, row in enumerate(solved):
        for j, value in enumerate(row):
            table.add(0, j, plan.displacement(k), value, "moussa")
    return table


def sweep_table(cfg):
    """Run ``cfg.method`` over ``k = 0..N``; noiseless runs are range-checked.

    Moussa runs rescaled to the four-level total are estimates rather than
    probabilities (truncation pushes some below zero), so they are exempt.
    """
    plan = TranslationPlan(cfg.b0, cfg.steps, cfg.dim)
    eta = cfg.eta[0]
    if cfg.method == "analytic":
        table = analytic_table(plan)
    elif cfg.method == "direct":
        table = direct_table(plan)
    elif cfg.method == "tomography":
        if plan.dim != 8:
            raise DimensionError(f"tomography emulates a 3-qubit register; dim must be 8, got {plan.dim}")
        if eta > 0:
            table = noisy_tomography_table(plan, NoiseConfig(eta, 1, cfg.seed))
        else:
            table = tomography_table(plan)
    else:
        if plan.dim != 4:
            raise DimensionError(f"the Moussa run uses a 2-qubit system; dim must be 4, got {plan.dim}")
        norm = normalization_for(cfg.norm)
        if eta > 0:
            table = noisy_moussa_table(plan, NoiseConfig(eta, 1, cfg.seed), norm, cfg.theta)
        else:
            table = moussa_table(plan, norm, cfg.theta)
    if eta == 0 and not (cfg.method == "moussa" and cfg.norm == "fourLevel"):
        bad = table.out_of_range()
        if bad:
            raise ConsistencyError(f"{len(bad)} FCF values fall outside [0, 1]")
    return table


@dataclass(frozen=True)
class TruncationRow:
    m: int
    n: int
    b: float
    dim: int
    truncated: float
    analytic: float

    @property
    def deviation(self):
        return abs(self.truncated - self.analytic)


def truncation_study(dims=(4, 8, 16), b_grid=None, max_level=MAX_LEVEL):
    """Truncated versus infinite-basis FCFs for every ``(m, n, b, dim)``."""
    b_grid = np.linspace(0.0, 4.0, 41) if b_grid is None else np.asarray(b_grid, dtype=float)
    rows = []
    for d in dims:
        top = min(max_level, d - 1)
        for b in b_grid:
            f = direct_fcf_matrix(translation_unitary(d, float(b)))
            for m in range(top + 1):
                for n in range(top + 1):
                    rows.append(TruncationRow(m, n, float(b), d, float(f[m, n]), reference_value(m, n, float(b))))
    return rows


def max_deviation_by_dim(rows, b_max=None, max_level=MAX_LEVEL):
    out = {}
    for r in rows:
        if b_max is not None and r.b > b_max + 1e-12:
            continue
        if r.m > max_level or r.n > max_level:
            continue
        out[r.dim] = max(out.get(r.dim, 0.0), r.deviation)
    return out


def check_convergence(rows):
    """Raise unless the worst deviation never grows from one dimension to the next."""
    worst = max_deviation_by_dim(rows)
    dims = sorted(worst)
    for lo, hi in zip(dims, dims[1:]):
        if worst[hi] > worst[lo] + 1e-12:
            raise ConsistencyError(
                f"truncation error grows from dim {lo} ({worst[lo]:.3e}) to dim {hi} ({worst[hi]:.3e})"
            )
    return worst
