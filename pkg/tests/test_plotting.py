"""
Tests for core.plotting: marching squares segments and SVG output.
"""

import numpy as np
import pytest

from core.errors import InvalidParameterError
from core.plotting import MARCHING_SQUARES_TABLE, plot_zero_set, render_svg, zero_set_segments
from core.polynomials import BivariatePolynomial, circle_polynomial


class TestSegments:

    def test_circle_segments_lie_near_circle(self):
        segments = zero_set_segments(circle_polynomial(), (-1.5, 1.5, -1.5, 1.5), grid=100)
        assert len(segments) > 100
        endpoints = np.array([point for segment in segments for point in segment])
        radii = np.hypot(endpoints[:, 0], endpoints[:, 1])
        np.testing.assert_allclose(radii, 1.0, atol=1e-3)

    def test_no_zero_set(self):
        P = BivariatePolynomial.from_terms([(0, 0, 1.0), (2, 0, 1.0), (0, 2, 1.0)])
        assert zero_set_segments(P, (-1.0, 1.0, -1.0, 1.0), grid=20) == []

    def test_saddle_cells(self):
        # xy - 0.01 has saddle-type cells near the origin
        P = BivariatePolynomial.from_terms([(1, 1, 1.0), (0, 0, -0.01)])
        segments = zero_set_segments(P, (-1.0, 1.0, -1.0, 1.0), grid=9)
        assert segments
        for start, end in segments:
            assert start[0] * start[1] == pytest.approx(0.01, abs=0.02)

    def test_table_is_complete(self):
        assert len(MARCHING_SQUARES_TABLE) == 16
        assert MARCHING_SQUARES_TABLE[0] == (False, []) and MARCHING_SQUARES_TABLE[15] == (False, [])

    def test_bad_box(self):
        with pytest.raises(InvalidParameterError):
            zero_set_segments(circle_polynomial(), (1.0, -1.0, -1.0, 1.0))


class TestSvg:

    def test_render(self):
        svg = render_svg([((0.0, 0.0), (1.0, 1.0))], (-1.0, 1.0, -1.0, 1.0))
        assert svg.startswith('<svg')
        assert '<path d="M 300.000 300.000 L 580.000 20.000"' in svg
        assert svg.rstrip().endswith('</svg>')

    def test_plot_writes_file(self, tmp_path):
        path = tmp_path / 'plots' / 'circle.svg'
        count = plot_zero_set(circle_polynomial(), (-1.5, 1.5, -1.5, 1.5), path, grid=50)
        assert count > 0
        assert path.read_text().count('M ') == count
