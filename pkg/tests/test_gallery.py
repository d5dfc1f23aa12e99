"""
Tests for core.gallery.

Ground truths:
  - the spectrum of circle_pair(n, D) is the unit circle with multiplicity n
  - circle pairs satisfy the BC2 relations; cos t C1 + sin t C2 is an involution
  - a seed determines every generated matrix bit for bit
"""

import numpy as np
import pytest

from core.decompose import verify_invariant_subspace
from core.errors import InvalidParameterError
from core.exterior import is_generic_multiset
from core.gallery import (
    GeneratorSpec,
    bc2_check,
    circle_pair,
    intro_example,
    make_rng,
    random_decomposable_pair,
    random_perturbed_pair,
    random_unitary,
)
from core.pencil import pencil_polynomial
from core.polynomials import circle_polynomial, divide


class TestCirclePair:

    def test_unit_circle_exactly(self):
        C1, C2 = circle_pair(1, np.eye(1))
        P = pencil_polynomial(C1, C2)
        np.testing.assert_allclose(P.coeffs, circle_polynomial().coeffs, atol=1e-12)

    def test_circle_with_multiplicity(self):
        rng = make_rng(3)
        for n in (1, 2, 3):
            C1, C2 = circle_pair(n, random_unitary(n, rng))
            P = pencil_polynomial(C1, C2)
            expected = (circle_polynomial() ** n).normalized()
            assert np.linalg.norm(P.coeffs - expected.coeffs) <= 1e-8 * expected.norm

    def test_bc2_relations(self):
        C1, C2 = circle_pair(2, random_unitary(2, make_rng(9)))
        check = bc2_check(C1, C2)
        assert check
        assert max(check.residuals) <= 1e-10
        np.testing.assert_allclose(C1 @ C2 + C2 @ C1, 0.0, atol=1e-12)
        np.testing.assert_allclose(np.linalg.eigvalsh(C2), [-1.0, -1.0, 1.0, 1.0], atol=1e-12)

    def test_rotated_involution(self):
        C1, C2 = circle_pair(2, random_unitary(2, make_rng(1)))
        for t in np.linspace(0.0, np.pi, 5):
            R = np.cos(t) * C1 + np.sin(t) * C2
            np.testing.assert_allclose(R @ R, np.eye(4), atol=1e-12)

    def test_non_bc2_pairs(self):
        assert not bc2_check(*intro_example())
        assert bc2_check(np.eye(2), np.eye(2))

    def test_requires_unitary(self):
        with pytest.raises(InvalidParameterError):
            circle_pair(2, np.diag([1.0, 2.0]))


class TestRandomPairs:

    def test_deterministic(self):
        first = random_decomposable_pair(5, 2, 42)
        second = random_decomposable_pair(5, 2, 42)
        assert np.array_equal(first.A, second.A)
        assert np.array_equal(first.B, second.B)
        assert not np.array_equal(first.B, random_decomposable_pair(5, 2, 43).B)

    def test_structure(self):
        A, B, basis = random_decomposable_pair(5, 2, 0)
        assert verify_invariant_subspace(B, basis) <= 1e-12
        assert verify_invariant_subspace(A, basis) <= 1e-12
        entries = np.diag(A).real
        assert np.all(np.abs(entries) >= 0.5)
        assert is_generic_multiset(A, entries[:2]).generic

    def test_gamma_divides_pencil(self):
        pair = random_decomposable_pair(4, 2, 5)
        _, residual = divide(pencil_polynomial(pair.A, pair.B), pair.gamma)
        assert residual <= 1e-10
        assert pair.gamma.total_degree(1e-12) == 2
        assert pair.gamma.constant == -1.0

    def test_dimension_checks(self):
        with pytest.raises(InvalidParameterError):
            random_decomposable_pair(3, 3, 0)
        with pytest.raises(InvalidParameterError):
            random_decomposable_pair(13, 2, 0)

    def test_zero_perturbation(self):
        base = random_decomposable_pair(4, 1, 8)
        perturbed = random_perturbed_pair(4, 1, 8, 0.0)
        assert np.array_equal(base.B, perturbed.B)

    def test_perturbation(self):
        pair = random_perturbed_pair(5, 2, 8, 1e-4)
        assert np.linalg.norm(pair.E, 2) == pytest.approx(1.0)
        np.testing.assert_array_equal(pair.E[:2, :2], 0.0)
        np.testing.assert_array_equal(pair.E[2:, 2:], 0.0)
        assert verify_invariant_subspace(pair.B, pair.basis) == pytest.approx(1e-4, rel=1e-8)


class TestGeneratorSpec:

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            GeneratorSpec('banana')

    def test_kinds(self):
        A, B, gamma, basis = GeneratorSpec('intro_example').build()
        assert A.shape == (3, 3) and gamma.total_degree(1e-12) == 2 and basis is None
        A, B, gamma, basis = GeneratorSpec('circle_pair', n=2, seed=1).build()
        assert A.shape == (4, 4) and gamma is None
        A, B, gamma, basis = GeneratorSpec('decomposable', n=4, k=2, seed=1).build()
        assert basis.shape == (4, 2)
        A2, B2, _, _ = GeneratorSpec('perturbed', n=4, k=2, seed=1, eps=1e-3).build()
        assert np.array_equal(A, A2)
        assert np.linalg.norm(B - B2, 2) == pytest.approx(1e-3)
