"""
Tests for core.pencil.

Ground truths:
  - det(x diag(1,5,0) + y A2 - I) = (x + y - 1)(5xy - 5y^2 - 15y - 10x + 2) / 2
    for the 3x3 example pair
  - for commuting diagonal pairs the spectrum is a union of lines
  - P_B(v) = P_A(c^T v) for B = c A
"""

import numpy as np
import pytest

from conftest import random_hermitian
from core.errors import EmptyIntersectionError, SingularMatrixError
from core.gallery import intro_example, intro_factors
from core.pencil import (
    curve_samples,
    eval_pencil,
    hausdorff_to_line,
    implicit_branch,
    line_containment,
    pencil_hyperplane_multiplicity,
    pencil_polynomial,
    restrict_to_line,
    transform_pencil,
    transform_polynomial,
)
from core.polynomials import Line, PolyDisk


class TestPencilPolynomial:

    def test_intro_example_factors(self):
        A1, A2 = intro_example()
        line, quadratic = intro_factors()
        P = pencil_polynomial(A1, A2)
        expected = (line * quadratic).normalized()
        assert P.constant == -1.0
        assert np.linalg.norm(P.coeffs - expected.coeffs) <= 1e-8 * expected.norm

    def test_matches_determinant(self, rng):
        A1, A2 = random_hermitian(3, rng), random_hermitian(3, rng)
        P = pencil_polynomial(A1, A2)
        # odd N: det(-I) = -1 already, so normalizing keeps the sign
        for x, y in rng.standard_normal((5, 2)):
            assert P(x, y) == pytest.approx(eval_pencil(A1, A2, x, y).real, rel=1e-9, abs=1e-9)

    def test_diagonal_pair_splits_into_lines(self):
        P = pencil_polynomial(np.diag([1.0, 5.0]), np.diag([2.0, 7.0]))
        assert line_containment(P, Line(1.0, 2.0)) == 1
        assert line_containment(P, Line(5.0, 7.0)) == 1
        assert line_containment(P, Line(1.0, 2.5)) == 0

    def test_repeated_line(self):
        P = pencil_polynomial(np.diag([1.0, 1.0, 3.0]), np.diag([2.0, 2.0, 7.0]))
        assert line_containment(P, Line(1.0, 2.0)) == 2


class TestLines:

    def test_intro_line_is_in_spectrum(self):
        P = pencil_polynomial(*intro_example())
        assert line_containment(P, Line(1.0, 1.0)) == 1
        assert line_containment(P, Line(1.0, 2.0)) == 0

    def test_restriction_vanishes_on_contained_line(self):
        P = pencil_polynomial(*intro_example())
        np.testing.assert_allclose(restrict_to_line(P, Line(1.0, 1.0)).coef, 0.0, atol=1e-10)

    def test_hyperplane_multiplicity(self):
        M1, M2 = np.diag([1.0, 1.0, 3.0]), np.diag([2.0, 2.0, 7.0])
        assert pencil_hyperplane_multiplicity([M1, M2], (1.0, 2.0)) == 2
        assert pencil_hyperplane_multiplicity([M1, M2], (3.0, 7.0)) == 1
        assert pencil_hyperplane_multiplicity([M1, M2], (3.0, 6.0)) == 0


class TestHausdorff:

    A1 = np.diag([1.0, 5.0])
    A2 = np.diag([2.0, 7.0])

    def test_contained_line_has_zero_distance(self):
        P = pencil_polynomial(self.A1, self.A2)
        assert hausdorff_to_line(P, Line(1.0, 2.0), PolyDisk((1.0, 0.0), 0.2)) <= 1e-10

    def test_tilted_line_has_positive_distance(self):
        P = pencil_polynomial(self.A1, self.A2)
        assert hausdorff_to_line(P, Line(1.0, 2.1), PolyDisk((1.0, 0.0), 0.2)) > 1e-3

    def test_empty_curve(self):
        P = pencil_polynomial(self.A1, self.A2)
        with pytest.raises(EmptyIntersectionError) as info:
            hausdorff_to_line(P, Line(0.1, 0.1), PolyDisk((10.0, 0.0), 0.1))
        assert info.value.which == 'curve'

    def test_curve_samples_lie_on_curve(self):
        P = pencil_polynomial(self.A1, self.A2)
        points = curve_samples(P, PolyDisk((1.0, 0.0), 0.2))
        assert len(points) > 0
        values = np.abs(P(points[:, 0], points[:, 1]))
        assert values.max() <= 1e-10


class TestTransforms:

    def test_covariance(self, rng):
        for _ in range(5):
            A1, A2 = random_hermitian(3, rng), random_hermitian(3, rng)
            c = rng.standard_normal((2, 2))
            while abs(np.linalg.det(c)) < 0.1:
                c = rng.standard_normal((2, 2))
            B1, B2 = transform_pencil(A1, A2, c)
            P_B = transform_polynomial(pencil_polynomial(A1, A2), c)
            for x, y in 0.5 * rng.standard_normal((4, 2)):
                expected = eval_pencil(B1, B2, x, y).real
                assert abs(P_B(x, y) - expected) <= 1e-8 * max(P_B.abs_scale(x, y), 1.0)

    def test_singular_transform(self):
        with pytest.raises(SingularMatrixError):
            transform_pencil(np.eye(2), np.eye(2), [[1.0, 2.0], [2.0, 4.0]])


class TestImplicitBranch:

    def test_follows_line(self):
        P = pencil_polynomial(np.diag([1.0, 5.0]), np.diag([2.0, 7.0]))
        ys = np.linspace(0.0, 0.1, 5)
        np.testing.assert_allclose(implicit_branch(P, 1.0, ys).real, 1.0 - 2.0 * ys, atol=1e-12)
