import numpy as np
import pytest

from source import linalg
from source.errors import ContractViolation, SupportViolation


def test_partial_trace_of_product_state(rng):
    rho = linalg.random_density(2, rng)
    sigma = linalg.random_density(3, rng)
    joint = np.kron(rho, sigma)
    np.testing.assert_allclose(linalg.partial_trace(joint, (2, 3), keep=0), rho, atol=1e-12)
    np.testing.assert_allclose(linalg.partial_trace(joint, (2, 3), keep="B"), sigma, atol=1e-12)


def test_partial_trace_tripartite_keeps_listed_systems(rng):
    states = [linalg.random_density(d, rng) for d in (2, 3, 2)]
    joint = linalg.kron(*states)
    np.testing.assert_allclose(
        linalg.partial_trace(joint, (2, 3, 2), keep=[0, 2]), np.kron(states[0], states[2]), atol=1e-12
    )


def test_partial_transpose_of_max_entangled_is_swap():
    swap = np.eye(4)[[0, 2, 1, 3]]
    np.testing.assert_allclose(linalg.partial_transpose(linalg.max_entangled(2), (2, 2), 1), swap, atol=1e-12)


def test_permute_systems_swaps_factors(rng):
    a = linalg.random_density(2, rng)
    b = linalg.random_density(3, rng)
    np.testing.assert_allclose(linalg.permute_systems(np.kron(a, b), (2, 3), [1, 0]), np.kron(b, a), atol=1e-12)


def test_layout_mismatch_raises():
    with pytest.raises(ContractViolation):
        linalg.partial_trace(np.eye(5), (2, 3), keep=0)


def test_check_hermitian_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        linalg.check_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))


def test_psd_power_clips_small_negative_eigenvalues():
    H = np.diag([1.0, -1e-12])
    np.testing.assert_allclose(linalg.psd_sqrt(H), np.diag([1.0, 0.0]), atol=1e-12)


def test_geometric_mean_commuting_case():
    X = np.diag([0.5, 0.25, 0.25])
    Y = np.diag([0.2, 0.3, 0.5])
    t = 0.3
    expected = np.diag(np.diag(X) ** (1 - t) * np.diag(Y) ** t)
    np.testing.assert_allclose(linalg.weighted_geometric_mean(X, Y, t), expected, atol=1e-12)


def test_geometric_mean_endpoints(rng):
    X = linalg.random_density(3, rng)
    Y = linalg.random_density(3, rng)
    np.testing.assert_allclose(linalg.weighted_geometric_mean(X, Y, 0), X, atol=1e-10)
    np.testing.assert_allclose(linalg.weighted_geometric_mean(X, Y, 1), Y, atol=1e-10)


def test_geometric_mean_is_symmetric_in_weight(rng):
    X = linalg.random_density(3, rng)
    Y = linalg.random_density(3, rng)
    np.testing.assert_allclose(
        linalg.weighted_geometric_mean(X, Y, 0.4), linalg.weighted_geometric_mean(Y, X, 0.6), atol=1e-9
    )


def test_negative_weight_needs_support():
    X = np.diag([0.5, 0.5])
    Y = np.diag([1.0, 0.0])
    with pytest.raises(SupportViolation):
        linalg.weighted_geometric_mean(X, Y, -0.5)


def test_random_density_is_a_state(rng):
    rho = linalg.random_density(4, rng, rank=2)
    linalg.check_density(rho)
    assert np.linalg.matrix_rank(rho, tol=1e-10) == 2


def test_norms():
    M = np.diag([3.0, -1.0])
    assert linalg.operator_norm(M) == pytest.approx(3.0)
    assert linalg.trace_norm(M) == pytest.approx(4.0)


def test_eigh_reconstructs_random_hermitians(rng):
    for k in range(100):
        H = linalg.random_hermitian(2 + k % 4, rng)
        lam, V = linalg.eigh(H)
        assert np.all(np.diff(lam) <= 1e-12)
        np.testing.assert_allclose(V.conj().T @ V, np.eye(H.shape[0]), atol=1e-10)
        np.testing.assert_allclose((V * lam) @ V.conj().T, H, atol=1e-10)


@pytest.mark.parametrize("t", [0.3, -0.5, 1.5])
def test_geometric_mean_is_multiplicative(rng, t):
    A, B = linalg.random_density(2, rng), linalg.random_density(2, rng)
    C, D = linalg.random_density(3, rng), linalg.random_density(3, rng)
    joint = linalg.weighted_geometric_mean(np.kron(A, C), np.kron(B, D), t)
    expected = np.kron(linalg.weighted_geometric_mean(A, B, t), linalg.weighted_geometric_mean(C, D, t))
    np.testing.assert_allclose(joint, expected, atol=1e-7)


@pytest.mark.parametrize("t", [0.25, -1.0])
def test_geometric_mean_transformer_equality(rng, t):
    A, B = linalg.random_density(3, rng), linalg.random_density(3, rng)
    K = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) + 3 * np.eye(3)
    left = K @ linalg.weighted_geometric_mean(A, B, t) @ K.conj().T
    right = linalg.weighted_geometric_mean(K @ A @ K.conj().T, K @ B @ K.conj().T, t)
    np.testing.assert_allclose(left, right, atol=1e-7)
