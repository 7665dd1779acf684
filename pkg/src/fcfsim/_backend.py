"""Pick the compiled kernels when importable, else the pure-Python fallback.

Set ``FCFSIM_PURE_PYTHON=1`` to force the fallback. Matrix exponentials of
dimension ``EXPM_BLAS_CROSSOVER`` or more always go through numpy, whose
BLAS products beat the compiled loops there.
"""

import os

from fcfsim import _purepy

EXPM_BLAS_CROSSOVER = 24

if os.environ.get("FCFSIM_PURE_PYTHON", "") not in ("", "0"):
    kernels = _purepy
    BACKEND = "python"
else:
    try:
        from fcfsim import _kernels as kernels

        BACKEND = "compiled"
    except ImportError:
        kernels = _purepy
        BACKEND = "python"

fcf_overlap = kernels.fcf_overlap
fcf_overlap_grid = kernels.fcf_overlap_grid


def expm_minus_i(h, t):
    if h.shape[0] >= EXPM_BLAS_CROSSOVER:
        return _purepy.expm_minus_i(h, t)
    return kernels.expm_minus_i(h, t)
