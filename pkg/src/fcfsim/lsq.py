"""Minimum-residual solves of small overdetermined systems via a thin QR factorization."""

import numpy as np
from scipy.linalg import solve_triangular

from fcfsim._checks import FcfSimError


class RankDeficientError(FcfSimError):
    pass


class LeastSquares:
    """Factor ``A`` once, then solve ``min ||A x - r||`` for many right-hand sides.

    ``solve`` accepts ``r`` with shape ``(..., rows)`` and returns ``(..., cols)``.
    """

    def __init__(self, a, rcond=1e-12):
        self.a = np.asarray(a, dtype=float)
        rows, cols = self.a.shape
        if rows < cols:
            raise RankDeficientError(f"system {rows}x{cols} is underdetermined")
        self.q, self.r = np.linalg.qr(self.a, mode="reduced")
        diag = np.abs(np.diag(self.r))
        self.rank = int(np.sum(diag > rcond * max(diag.max(), 1.0)))
        if self.rank < cols:
            raise RankDeficientError(f"matrix has rank {self.rank} < {cols}")

    def solve(self, rhs):
        rhs = np.asarray(rhs, dtype=float)
        qtr = rhs @ self.q
        flat = qtr.reshape(-1, qtr.shape[-1]).T
        x = solve_triangular(self.r, flat, lower=False)
        return x.T.reshape(qtr.shape[:-1] + (self.a.shape[1],))

    def residual(self, x, rhs):
        """Euclidean residual norm ``||A x - r||`` along the last axis."""
        return np.linalg.norm(np.asarray(x) @ self.a.T - np.asarray(rhs, dtype=float), axis=-1)
