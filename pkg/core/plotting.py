"""
SVG rendering of the real zero set {(x, y) in R^2 : P(x, y) = 0} by marching squares.
"""

from pathlib import Path

import numpy as np

from utils.logger import get_logger

from .errors import InvalidParameterError

logger = get_logger('plotting')

DEFAULT_GRID = 400
CANVAS = 600
MARGIN = 20

# Corner order: 0 = (x0, y0), 1 = (x1, y0), 2 = (x1, y1), 3 = (x0, y1).
# Entries are lists of segments between crossed edges; saddles carry both pairings
# and the sign at the cell centre picks one.
MARCHING_SQUARES_TABLE = [
    (False, []),
    (False, [((0, 3), (2, 3))]),
    (False, [((1, 2), (2, 3))]),
    (False, [((0, 3), (1, 2))]),
    (False, [((0, 1), (1, 2))]),
    (True, ([((0, 1), (1, 2)), ((0, 3), (2, 3))], [((0, 1), (0, 3)), ((1, 2), (2, 3))])),
    (False, [((0, 1), (2, 3))]),
    (False, [((0, 1), (0, 3))]),
    (False, [((0, 1), (0, 3))]),
    (False, [((0, 1), (2, 3))]),
    (True, ([((0, 1), (0, 3)), ((1, 2), (2, 3))], [((0, 1), (1, 2)), ((0, 3), (2, 3))])),
    (False, [((0, 1), (1, 2))]),
    (False, [((0, 3), (1, 2))]),
    (False, [((1, 2), (2, 3))]),
    (False, [((0, 3), (2, 3))]),
    (False, []),
]


def _crossing(p0, p1, v0, v1):
    t = v0 / (v0 - v1) if v0 != v1 else 0.5
    t = min(max(t, 0.0), 1.0)
    return p0 * (1 - t) + t * p1


def zero_set_segments(P, box, grid=DEFAULT_GRID):
    """Line segments approximating the real zero set of P inside box = (x0, x1, y0, y1)."""
    x_min, x_max, y_min, y_max = (float(v) for v in box)
    if not (x_max > x_min and y_max > y_min):
        raise InvalidParameterError(f"empty plotting box {box}")
    if grid < 2:
        raise InvalidParameterError(f"grid must be at least 2, got {grid}")
    xs = np.linspace(x_min, x_max, grid + 1)
    ys = np.linspace(y_min, y_max, grid + 1)
    X, Y = np.meshgrid(xs, ys, indexing='ij')
    values = np.real(P(X, Y))
    positive = values > 0

    index = (positive[:-1, :-1].astype(int) << 3) | (positive[1:, :-1].astype(int) << 2) \
        | (positive[1:, 1:].astype(int) << 1) | positive[:-1, 1:].astype(int)

    segments = []
    for i, j in zip(*np.nonzero((index != 0) & (index != 15))):
        corners = [np.array((xs[i], ys[j])), np.array((xs[i + 1], ys[j])),
                   np.array((xs[i + 1], ys[j + 1])), np.array((xs[i], ys[j + 1]))]
        samples = [values[i, j], values[i + 1, j], values[i + 1, j + 1], values[i, j + 1]]
        saddle, edges = MARCHING_SQUARES_TABLE[index[i, j]]
        if saddle:
            centre = 0.5 * (corners[0] + corners[2])
            edges = edges[int(np.real(P(centre[0], centre[1])) > 0)]
        for (a0, a1), (b0, b1) in edges:
            start = _crossing(corners[a0], corners[a1], samples[a0], samples[a1])
            end = _crossing(corners[b0], corners[b1], samples[b0], samples[b1])
            segments.append((tuple(start), tuple(end)))
    logger.debug(f"marching squares on {grid}x{grid}: {len(segments)} segments")
    return segments


def render_svg(segments, box, size=CANVAS):
    x_min, x_max, y_min, y_max = (float(v) for v in box)
    inner = size - 2 * MARGIN
    sx = inner / (x_max - x_min)
    sy = inner / (y_max - y_min)

    def to_canvas(point):
        x, y = point
        return MARGIN + (x - x_min) * sx, size - MARGIN - (y - y_min) * sy

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{inner}" height="{inner}" fill="none" stroke="#999999"/>',
    ]
    if x_min < 0 < x_max:
        cx, _ = to_canvas((0.0, y_min))
        lines.append(f'<line x1="{cx:.3f}" y1="{MARGIN}" x2="{cx:.3f}" y2="{size - MARGIN}" stroke="#dddddd"/>')
    if y_min < 0 < y_max:
        _, cy = to_canvas((x_min, 0.0))
        lines.append(f'<line x1="{MARGIN}" y1="{cy:.3f}" x2="{size - MARGIN}" y2="{cy:.3f}" stroke="#dddddd"/>')
    path = ' '.join(
        'M {:.3f} {:.3f} L {:.3f} {:.3f}'.format(*to_canvas(start), *to_canvas(end)) for start, end in segments
    )
    if path:
        lines.append(f'<path d="{path}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'


def plot_zero_set(P, box, path, grid=DEFAULT_GRID):
    """Write the SVG and return the number of segments drawn."""
    segments = zero_set_segments(P, box, grid)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(render_svg(segments, box))
    return len(segments)
