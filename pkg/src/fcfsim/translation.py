"""Position-translation unitaries ``U_T(b) = exp(-i p b)`` and their stepped form."""

from dataclasses import dataclass

import numpy as np

from fcfsim._checks import FcfSimError, check_dim, check_finite
from fcfsim.fock import build_momentum, matrix_exponential


@dataclass(frozen=True)
class TranslationPlan:
    """Displacements ``b0 * k / steps`` for ``k = 0..steps`` in a ``dim``-level basis."""

    b0: float
    steps: int
    dim: int

    def __post_init__(self):
        check_finite("b0", self.b0)
        if self.b0 < 0:
            raise FcfSimError(f"b0 must be >= 0, got {self.b0}")
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            raise FcfSimError(f"steps must be a positive integer, got {self.steps!r}")
        check_dim(self.dim)

    @property
    def step(self):
        return self.b0 / self.steps

    def displacement(self, k):
        return self.b0 * k / self.steps

    def grid(self):
        return np.array([self.displacement(k) for k in range(self.steps + 1)])


def translation_unitary(d, b):
    """Return ``exp(-i p b)`` in the ``d``-level truncated basis."""
    b = check_finite("b", b)
    return matrix_exponential(build_momentum(d), b)


def step_unitaries(plan):
    """All ``[U_T(b0/N)]**k`` for ``k = 0..N``, built by repeated multiplication."""
    step = translation_unitary(plan.dim, plan.step)
    out = [np.eye(plan.dim, dtype=np.complex128)]
    for _ in range(plan.steps):
        out.append(step @ out[-1])
    return out


def discrete_translation(plan, k):
    """Apply the single-step translation ``k`` times (``0 <= k <= N``)."""
    if isinstance(k, bool) or int(k) != k or not 0 <= k <= plan.steps:
        raise FcfSimError(f"k must be an integer in [0, {plan.steps}], got {k!r}")
    step = translation_unitary(plan.dim, plan.step)
    u = np.eye(plan.dim, dtype=np.complex128)
    for _ in range(int(k)):
        u = step @ u
    return u


def direct_fcf_matrix(u):
    """``F[m, n] = |<m|U|n>|**2``: FCFs read off the translation columns."""
    return np.abs(np.asarray(u)) ** 2
