"""
Tests for core.matrices: validation, the Jacobi eigensolver, determinants,
inverses and the identity-shift family.

Ground truths:
  - numpy.linalg.eigvalsh / det / norm on the same input
  - perturb(diag(1, 3), 0.5, 1) = diag(1, 4)
"""

import numpy as np
import pytest

from conftest import hermitian_with_spectrum, random_hermitian
from core.errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidParameterError,
    NotHermitianError,
    SingularMatrixError,
)
from core.matrices import (
    as_hermitian,
    as_matrix,
    commutator_norm,
    det,
    eig_hermitian,
    inverse,
    is_singular,
    orthogonal_complement,
    perturb,
)


class TestValidation:

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            as_matrix(np.ones((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            as_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError) as info:
            as_hermitian([[1.0, 2.0], [0.0, 1.0]])
        assert info.value.asymmetry == pytest.approx(2.0)

    def test_returns_read_only_copy(self):
        M = as_hermitian(np.eye(2))
        with pytest.raises(ValueError):
            M[0, 0] = 5.0


class TestEigHermitian:

    def test_matches_numpy(self, rng):
        for n in (1, 2, 5, 8):
            A = random_hermitian(n, rng)
            eig = eig_hermitian(A)
            expected = np.sort(np.linalg.eigvalsh(A))[::-1]
            np.testing.assert_allclose(eig.eigenvalues, expected, atol=1e-10 * max(1.0, np.abs(expected).max()))

    def test_vectors_unitary_and_reconstruct(self, rng):
        A = random_hermitian(6, rng)
        eig = eig_hermitian(A)
        np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(6), atol=1e-12)
        np.testing.assert_allclose(eig.reconstruct(), A, atol=1e-11)

    def test_descending_with_clusters(self):
        eig = eig_hermitian(np.diag([1.0, 3.0, 1.0]))
        np.testing.assert_allclose(eig.eigenvalues, [3.0, 1.0, 1.0])
        assert eig.clusters == ((0,), (1, 2))

    def test_projection_onto_cluster(self):
        eig = eig_hermitian(np.diag([1.0, 1.0, 3.0]))
        P = eig.projection(eig.indices_near(1.0, 1e-9))
        np.testing.assert_allclose(P, np.diag([1.0, 1.0, 0.0]), atol=1e-14)

    def test_many_random_matrices(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 9))
            A = random_hermitian(n, rng)
            eig = eig_hermitian(A)
            scale = np.linalg.norm(A)
            assert eig.off_norm <= 1e-13 * scale
            np.testing.assert_allclose(eig.reconstruct(), A, atol=1e-12 * scale)
            np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(n), atol=1e-12)

    def test_tiny_coupling_is_rotated_away(self):
        A = np.array([[1.0, 1e-10], [1e-10, 2.0]])
        eig = eig_hermitian(A)
        assert eig.sweeps >= 1
        # eigenvector of 2 leans on e1 by about 1e-10
        assert abs(eig.vectors[0, 0]) == pytest.approx(1e-10, rel=1e-6)
        np.testing.assert_allclose(eig.reconstruct(), A, rtol=0, atol=4e-15)

    def test_reports_non_convergence(self):
        with pytest.raises(ConvergenceError) as info:
            eig_hermitian([[1.0, 1.0], [1.0, 2.0]], max_sweeps=0)
        assert info.value.residual > 0


class TestDeterminantAndInverse:

    def test_det_matches_numpy(self, rng):
        A = random_hermitian(5, rng)
        assert det(A) == pytest.approx(np.linalg.det(A), rel=1e-10)

    def test_exactly_singular(self):
        assert det([[1.0, 2.0], [2.0, 4.0]]) == 0
        assert is_singular(np.diag([1.0, 5.0, 0.0]))
        assert not is_singular(np.diag([1.0, 5.0, 2.0]))

    def test_inverse_of_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inverse(np.diag([1.0, 0.0]))

    def test_inverse_of_hermitian_is_hermitian(self, rng):
        A = hermitian_with_spectrum([2.0, -1.0, 0.5, 1.5], rng)
        A_inv = inverse(A)
        np.testing.assert_allclose(A_inv @ A, np.eye(4), atol=1e-12)
        assert np.array_equal(A_inv, A_inv.conj().T)


class TestPairOperations:

    def test_commutator_norm(self, rng):
        A, B = random_hermitian(4, rng), random_hermitian(4, rng)
        expected = np.linalg.norm(A @ B - B @ A, 2)
        assert commutator_norm(A, B) == pytest.approx(expected, rel=1e-10)

    def test_commuting_pair(self):
        assert commutator_norm(np.diag([1.0, 2.0]), np.diag([5.0, -1.0])) == 0.0

    def test_perturb_family(self):
        np.testing.assert_allclose(perturb(np.diag([1.0, 3.0]), 0.5, 1.0), np.diag([1.0, 4.0]))

    def test_perturb_rejects_minus_one(self):
        with pytest.raises(InvalidParameterError):
            perturb(np.eye(2), -1, 1.0)

    def test_orthogonal_complement(self, rng):
        v = rng.standard_normal((4, 1)) + 1j * rng.standard_normal((4, 1))
        v /= np.linalg.norm(v)
        W = orthogonal_complement(v)
        assert W.shape == (4, 3)
        np.testing.assert_allclose(W.conj().T @ W, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(W.conj().T @ v, 0, atol=1e-12)
