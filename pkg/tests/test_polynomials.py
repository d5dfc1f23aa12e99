"""
Tests for core.polynomials.

Ground truths:
  - (x + y - 1)(x - y - 1) = x^2 - 2x - y^2 + 1
  - roots of 2 - 3t + t^2 are 1 and 2
  - the unit circle divides its own cube three times
"""

import numpy as np
import pytest

from core.errors import InvalidParameterError
from core.polynomials import (
    BivariatePolynomial,
    Line,
    PolyDisk,
    circle_polynomial,
    companion_roots,
    curve_multiplicity,
    divide,
    line_coordinates,
    substitute_affine,
)


def line_poly(a, b):
    return Line(a, b).polynomial()


class TestBivariatePolynomial:

    def test_product(self):
        P = line_poly(1.0, 1.0) * BivariatePolynomial.from_terms([(1, 0, 1.0), (0, 1, -1.0), (0, 0, -1.0)])
        expected = BivariatePolynomial.from_terms([(2, 0, 1.0), (1, 0, -2.0), (0, 2, -1.0), (0, 0, 1.0)])
        np.testing.assert_allclose(P.coeffs, expected.coeffs, atol=1e-15)

    def test_terms_above_degree_are_dropped(self):
        P = BivariatePolynomial(np.ones((2, 2)))
        assert P.coeffs[1, 1] == 0.0

    def test_complex_coefficients_rejected(self):
        with pytest.raises(InvalidParameterError):
            BivariatePolynomial(np.array([[1.0, 1j], [0.0, 0.0]]))

    def test_normalized(self):
        P = BivariatePolynomial.from_terms([(0, 0, 4.0), (1, 0, 2.0)]).normalized()
        assert P.constant == -1.0
        assert P.coeffs[1, 0] == -0.5

    def test_normalized_needs_constant(self):
        with pytest.raises(InvalidParameterError):
            BivariatePolynomial.from_terms([(1, 0, 1.0)]).normalized()

    def test_partial(self):
        P = BivariatePolynomial.from_terms([(2, 1, 1.0)])
        assert P.partial(dx=1)(3.0, 5.0) == pytest.approx(30.0)
        assert P.partial(dy=1)(3.0, 5.0) == pytest.approx(9.0)
        assert P.partial(dx=2, dy=1)(3.0, 5.0) == pytest.approx(2.0)

    def test_scaled(self, rng):
        P = circle_polynomial()
        x, y = rng.standard_normal(2)
        assert P.scaled(2.0, 3.0)(x, y) == pytest.approx(P(2 * x, 3 * y))

    def test_total_degree(self):
        assert circle_polynomial().total_degree() == 2
        assert BivariatePolynomial(np.zeros((3, 3))).total_degree() == -1


class TestLineAndDisk:

    def test_line_needs_direction(self):
        with pytest.raises(InvalidParameterError):
            Line(0.0, 0.0)

    def test_base_point_on_line(self):
        L = Line(2.0, -3.0)
        assert L.polynomial()(*L.base_point) == pytest.approx(0.0, abs=1e-15)

    def test_polydisk_contains(self):
        D = PolyDisk((1.0, 0.0), 0.5)
        assert D.contains(1.2 + 0.1j, -0.3)
        assert not D.contains(1.6, 0.0)

    def test_polydisk_radius_positive(self):
        with pytest.raises(InvalidParameterError):
            PolyDisk((0.0, 0.0), 0.0)


class TestSubstitution:

    def test_substitute_affine(self, rng):
        P = circle_polynomial() * line_poly(1.0, 2.0)
        x_map, y_map = rng.standard_normal(3), rng.standard_normal(3)
        Q = substitute_affine(P, x_map, y_map)
        u, t = rng.standard_normal(2)
        x = x_map[0] + x_map[1] * u + x_map[2] * t
        y = y_map[0] + y_map[1] * u + y_map[2] * t
        assert Q(u, t) == pytest.approx(P(x, y), rel=1e-12, abs=1e-12)

    def test_line_coordinates_put_line_on_axis(self):
        Q = line_coordinates(line_poly(3.0, 4.0), Line(3.0, 4.0))
        np.testing.assert_allclose(Q.coeffs[0, :], 0.0, atol=1e-15)


class TestRootsAndDivision:

    def test_companion_roots(self):
        roots, vanishing = companion_roots([[2.0, -3.0, 1.0], [0.0, 0.0, 0.0], [5.0, 0.0, 0.0]])
        np.testing.assert_allclose(np.sort(roots[0].real), [1.0, 2.0], atol=1e-14)
        assert list(vanishing) == [False, True, False]
        assert roots[2].size == 0

    def test_companion_roots_trims_leading_zero(self):
        roots, _ = companion_roots([[-2.0, 1.0, 0.0]])
        np.testing.assert_allclose(roots[0], [2.0])

    def test_exact_division(self):
        L = line_poly(1.0, 1.0)
        quotient, residual = divide(L * circle_polynomial(), L)
        assert residual < 1e-12
        np.testing.assert_allclose(quotient.coeffs, circle_polynomial().coeffs, atol=1e-12)

    def test_non_divisor(self):
        _, residual = divide(circle_polynomial(), line_poly(1.0, 1.0))
        assert residual > 1e-3

    def test_curve_multiplicity(self):
        circle = circle_polynomial()
        assert curve_multiplicity(circle ** 3, circle) == 3
        assert curve_multiplicity(circle * line_poly(1.0, 2.0), circle) == 1
        assert curve_multiplicity(line_poly(1.0, 2.0) ** 2, circle) == 0
