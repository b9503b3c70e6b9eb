"""Structure tensor and operator basis identities."""

import numpy as np
import pytest

from qdegen.basis import (
    PAULI,
    SQRT2,
    build_basis,
    multiply_codes,
    structure_entry,
    structure_tensor,
)


def test_basis_orthonormal():
    mats = build_basis().matrices
    for a in range(4):
        for b in range(4):
            ip = np.trace(mats[a].conj().T @ mats[b])
            assert abs(ip - (1.0 if a == b else 0.0)) < 1e-14


def test_build_basis_rejects_other_dims():
    with pytest.raises(ValueError):
        build_basis(local_dim=3)


def test_identity_code_acts_as_scalar():
    # O_0 = I/sqrt(2), so left multiplication scales coefficients by 1/sqrt(2)
    left = structure_tensor("left")
    assert np.allclose(left[0], np.eye(4) / SQRT2, atol=1e-14)


def test_left_tensor_represents_left_multiplication():
    """T[alpha] maps coefficients of A to coefficients of O_alpha A."""
    mats = build_basis().matrices
    left = structure_tensor("left")
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        coeffs = np.array([np.trace(m.conj().T @ a) for m in mats])
        for alpha in range(4):
            prod = mats[alpha] @ a
            want = np.array([np.trace(m.conj().T @ prod) for m in mats])
            assert np.allclose(left[alpha] @ coeffs, want, atol=1e-13)


def test_right_tensor_represents_right_multiplication():
    mats = build_basis().matrices
    right = structure_tensor("right")
    rng = np.random.default_rng(12)
    for _ in range(20):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        coeffs = np.array([np.trace(m.conj().T @ a) for m in mats])
        for alpha in range(4):
            prod = a @ mats[alpha]
            want = np.array([np.trace(m.conj().T @ prod) for m in mats])
            assert np.allclose(right[alpha] @ coeffs, want, atol=1e-13)


def test_right_is_elementwise_conjugate_of_left():
    # the real averaged lift construction relies on this
    assert np.allclose(structure_tensor("right"), structure_tensor("left").conj(), atol=1e-14)


def test_averaged_tensor_is_real_mean():
    left = structure_tensor("left")
    right = structure_tensor("right")
    avg = structure_tensor("averaged")
    assert np.allclose(avg, (left + right) / 2.0, atol=1e-15)
    assert np.abs(avg.imag).max() < 1e-14


def test_left_matrices_form_homomorphism():
    # L_alpha L_gamma must equal the lifted image of O_alpha O_gamma
    left = structure_tensor("left")
    for alpha in range(4):
        for gamma in range(4):
            want = sum(c * left[b] for b, c in multiply_codes(alpha, gamma))
            assert np.allclose(left[alpha] @ left[gamma], want, atol=1e-14)


def test_right_matrices_reverse_products():
    right = structure_tensor("right")
    for alpha in range(4):
        for gamma in range(4):
            want = sum(c * right[b] for b, c in multiply_codes(gamma, alpha))
            assert np.allclose(right[alpha] @ right[gamma], want, atol=1e-14)


def test_left_and_right_commute():
    left = structure_tensor("left")
    right = structure_tensor("right")
    for alpha in range(4):
        for gamma in range(4):
            comm = left[alpha] @ right[gamma] - right[gamma] @ left[alpha]
            assert np.abs(comm).max() < 1e-14


def test_multiply_codes_pauli_algebra():
    # X Y = i Z at unit normalization: O_1 O_2 = (i/sqrt(2)) O_3
    assert multiply_codes(1, 2) == [(3, pytest.approx(1j / SQRT2))]
    assert multiply_codes(2, 1) == [(3, pytest.approx(-1j / SQRT2))]
    for alpha in range(4):
        for gamma in range(4):
            pairs = multiply_codes(alpha, gamma)
            assert len(pairs) == 1
            assert abs(abs(pairs[0][1]) - 1.0 / SQRT2) < 1e-14


def test_structure_entry_matches_trace():
    mats = PAULI / SQRT2
    got = structure_entry("left", 1, 3, 2)
    want = np.trace(mats[3].conj().T @ mats[1] @ mats[2])
    assert abs(got - want) < 1e-14


def test_unknown_variant_rejected():
    with pytest.raises(ValueError):
        structure_tensor("middle")
