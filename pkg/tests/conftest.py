import importlib

import numpy as np
import pytest


def _available_backends():
    mods = [importlib.import_module("fcfsim._purepy")]
    try:
        mods.append(importlib.import_module("fcfsim._kernels"))
    except ImportError:
        pass
    return mods


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def kernels(request):
    return request.param


def hermite_functions(n_max, x):
    """Normalized oscillator eigenfunctions psi_0..psi_{n_max} on ``x``."""
    psi = np.zeros((n_max + 1, x.size))
    psi[0] = np.pi ** -0.25 * np.exp(-x * x / 2)
    if n_max >= 1:
        psi[1] = np.sqrt(2.0) * x * psi[0]
    for n in range(2, n_max + 1):
        psi[n] = np.sqrt(2.0 / n) * x * psi[n - 1] - np.sqrt((n - 1) / n) * psi[n - 2]
    return psi


def quadrature_fcf(m, n, b, half_width=20.0, points=40001):
    """``|int psi_m(x) psi_n(x - b) dx|**2`` by trapezoid rule on a wide grid."""
    x = np.linspace(-half_width, half_width, points)
    top = max(m, n)
    lhs = hermite_functions(top, x)[m]
    rhs = hermite_functions(top, x - b)[n]
    return float(np.trapezoid(lhs * rhs, x) ** 2)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
