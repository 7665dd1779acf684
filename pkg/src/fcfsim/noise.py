"""Monte Carlo robustness of both readout pipelines against uniform intensity noise."""

import math
from dataclasses import dataclass, field

import numpy as np

from fcfsim._checks import FcfSimError
from fcfsim.moussa import deltas_from_readouts, pops_readouts, solve_fcfs
from fcfsim.table import fmt, open_output
from fcfsim.tomography import build_constraint_matrix, reconstruct_diagonal, sweep_intensities
from fcfsim.translation import TranslationPlan, step_unitaries

DEFAULT_TRIALS = 1000
DEFAULT_SEED = 20150101
TOMOGRAPHY_STREAM = 0
MOUSSA_STREAM = 1


@dataclass(frozen=True)
class NoiseConfig:
    eta: float = 0.0
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not math.isfinite(self.eta) or self.eta < 0:
            raise FcfSimError(f"eta must be finite and >= 0, got {self.eta}")
        if isinstance(self.trials, bool) or int(self.trials) != self.trials or self.trials < 1:
            raise FcfSimError(f"trials must be a positive integer, got {self.trials!r}")


def stream_rng(seed, stream_index):
    """Counter-based generator keyed by ``(seed, stream_index)``.

    ``stream_index`` may be an int or a tuple of ints; the same key always
    yields the same draws regardless of which worker asks for them.
    """
    key = tuple(stream_index) if isinstance(stream_index, (tuple, list)) else (int(stream_index),)
    seq = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


def inject_noise(values, cfg, stream_index):
    """Add independent ``U(-eta, eta)`` draws to every entry of ``values``."""
    values = np.asarray(values, dtype=float)
    if cfg.eta == 0:
        return values.copy()
    rng = stream_rng(cfg.seed, stream_index)
    return values + rng.uniform(-cfg.eta, cfg.eta, size=values.shape)


@dataclass
class RobustnessCurve:
    points: list
    metadata: dict = field(default_factory=dict)

    @property
    def etas(self):
        return np.array([p[0] for p in self.points])

    @property
    def sigma_tomography(self):
        return np.array([p[1] for p in self.points])

    @property
    def sigma_moussa(self):
        return np.array([p[2] for p in self.points])


def _spread(samples):
    # per-point sample standard deviation across the leading trial axis
    ddof = 1 if samples.shape[0] > 1 else 0
    return float(np.mean(np.std(samples, axis=0, ddof=ddof)))


def _noisy_trials(base, cfg, eta_index, method_stream):
    return np.stack(
        [inject_noise(base, cfg, (eta_index, method_stream, t)) for t in range(cfg.trials)]
    )


def default_plans():
    return TranslationPlan(3.0, 11, 8), TranslationPlan(4.0, 11, 4)


def robustness_curve(
    eta_grid,
    trials=DEFAULT_TRIALS,
    seed=DEFAULT_SEED,
    tomography_plan=None,
    moussa_plan=None,
    normalization=1.0,
    theta=math.pi,
    levels=(0, 1, 2, 3),
):
    """Average per-FCF standard deviation versus noise half-width ``eta``.

    Tomography: noise lands on the 13 normalized intensities of every
    ``(n, k)`` experiment before reconstruction. Moussa: noise lands on the
    four ancilla ``<sx>`` readouts of every ``k`` before the difference solve.
    Each trial draws from its own stream ``(eta index, method, trial)``.
    """
    eta_grid = [float(e) for e in eta_grid]
    if not eta_grid:
        raise FcfSimError("eta grid is empty")
    default_tomo, default_moussa = default_plans()
    tomo_plan = tomography_plan or default_tomo
    moussa_plan = moussa_plan or default_moussa

    cm = build_constraint_matrix()
    tomo_base = np.stack([sweep_intensities(tomo_plan, n, cm) for n in levels])
    moussa_base = np.stack([pops_readouts(u, theta) for u in step_unitaries(moussa_plan)])
    bs = moussa_plan.grid()
    norms = np.array([normalization(b) if callable(normalization) else normalization for b in bs])

    points = []
    for e, eta in enumerate(eta_grid):
        cfg = NoiseConfig(eta, trials, seed)
        pops = reconstruct_diagonal(_noisy_trials(tomo_base, cfg, e, TOMOGRAPHY_STREAM), cm)
        sigma_t = _spread(pops[..., : max(levels) + 1])
        sx = _noisy_trials(moussa_base, cfg, e, MOUSSA_STREAM)
        solved, _ = solve_fcfs(deltas_from_readouts(sx, theta), norms)
        sigma_m = _spread(solved)
        points.append((eta, sigma_t, sigma_m))

    metadata = {
        "seed": seed,
        "trials": trials,
        "eta_grid": " ".join(fmt(e) for e in eta_grid),
        "tomography_plan": f"b0={fmt(tomo_plan.b0)} N={tomo_plan.steps} dim={tomo_plan.dim} levels={''.join(map(str, levels))}",
        "moussa_plan": f"b0={fmt(moussa_plan.b0)} N={moussa_plan.steps} dim={moussa_plan.dim} theta={fmt(theta)}",
    }
    return RobustnessCurve(points, metadata)


CURVE_COLUMNS = ("eta", "sigma_tomography", "sigma_moussa")


def write_curve(dest, curve):
    with open_output(dest) as fh:
        for key, value in curve.metadata.items():
            fh.write(f"# {key}: {value}\n")
        fh.write(",".join(CURVE_COLUMNS) + "\n")
        for point in curve.points:
            fh.write(",".join(fmt(v) for v in point) + "\n")


def read_curve(path):
    metadata, points = {}, []
    with open(path) as fh:
        header = None
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                metadata[key] = value
            elif header is None:
                header = line.split(",")
                if tuple(header) != CURVE_COLUMNS:
                    raise FcfSimError(f"unexpected robustness header {header}")
            elif line:
                points.append(tuple(float(v) for v in line.split(",")))
    return RobustnessCurve(points, metadata)
