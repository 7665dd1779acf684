import numpy as np
import pytest

from fcfsim._checks import DimensionError, FcfSimError, NotUnitaryError
from fcfsim.analytic import fcf_oracle
from fcfsim.register import (
    PAULI_X,
    PAULI_Z,
    PLUS,
    PopsPair,
    basis_label,
    encode_level,
    evolve,
    expectation,
    is_valid_state,
    partial_trace_system,
    pops_state,
    tensor,
)
from fcfsim.translation import translation_unitary


def test_encode_ground():
    rho = encode_level(0, 3)
    assert rho.shape == (8, 8) and rho[0, 0] == 1 and np.trace(rho) == 1


def test_encode_level_three_is_011():
    rho = encode_level(3, 3)
    assert rho[3, 3] == 1
    assert basis_label(3, 3) == "011"


def test_encode_out_of_range():
    with pytest.raises(FcfSimError):
        encode_level(5, 2)


@pytest.mark.parametrize("n", range(8))
def test_encoded_states_are_projectors(n):
    rho = encode_level(n, 3)
    assert np.array_equal(rho @ rho, rho)


def test_pops_examples():
    assert np.array_equal(pops_state(PopsPair(0, 1), 2), np.diag([1, -1, 0, 0]))
    assert np.array_equal(pops_state(PopsPair(2, 3), 2), np.diag([0, 0, 1, -1]))
    for j in range(4):
        for k in range(4):
            if j != k:
                assert np.trace(pops_state(PopsPair(j, k), 2)) == 0


def test_pops_same_level():
    with pytest.raises(FcfSimError):
        PopsPair(1, 1)


def test_tensor_plus_with_ground():
    joint = tensor(PLUS, encode_level(0, 2))
    assert joint.shape == (8, 8)
    assert np.trace(joint) == pytest.approx(1)


def test_partial_trace_of_product_returns_ancilla():
    rng = np.random.default_rng(3)
    anc = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    sys_rho = np.outer(psi, psi.conj())
    assert np.allclose(partial_trace_system(tensor(anc, sys_rho), 2), anc, atol=1e-15)


def test_partial_trace_dimension_error():
    with pytest.raises(DimensionError):
        partial_trace_system(np.eye(6), 4)


def test_expectation_sigma_z():
    assert expectation(encode_level(0, 1), PAULI_Z) == 1


def test_expectation_hermitian_is_real():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        val = expectation(np.outer(psi, psi.conj()), a + a.conj().T)
        assert abs(val.imag) < 1e-10


def test_expectation_shape_mismatch():
    with pytest.raises(DimensionError):
        expectation(np.eye(2), np.eye(4))


def test_evolve_identity():
    rho = pops_state(PopsPair(1, 2), 2)
    assert np.array_equal(evolve(rho, np.eye(4)), rho)


def test_evolve_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        evolve(encode_level(0, 1), 2 * PAULI_X)


@pytest.mark.parametrize("b", [0.5, 1.5, 2.5])
def test_translated_ground_matches_oracle(b):
    rho = evolve(encode_level(0, 4), translation_unitary(16, b))
    for m in range(4):
        assert rho[m, m].real == pytest.approx(fcf_oracle(m, 0, b), abs=1e-3)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_translated_diagonal_equals_column_magnitudes(n):
    u = translation_unitary(8, 1.9)
    rho = evolve(encode_level(n, 3), u)
    assert np.max(np.abs(np.diag(rho).real - np.abs(u[:, n]) ** 2)) < 1e-15


def test_evolve_preserves_trace_and_hermiticity():
    u = translation_unitary(4, 2.2)
    for pair in (PopsPair(0, 1), PopsPair(2, 3)):
        out = evolve(pops_state(pair, 2), u)
        assert abs(np.trace(out)) < 1e-10
        assert is_valid_state(out, traceless=True)
    assert is_valid_state(evolve(encode_level(2, 2), u))
