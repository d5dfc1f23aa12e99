"""
Pencil determinants and their zero sets.

The determining polynomial of a Hermitian pair is P(x, y) = det(x A1 + y A2 - I),
normalized so that P(0, 0) = -1. This module builds it by interpolation,
samples its zero set in polydisks, measures Hausdorff distances to lines,
counts line multiplicities and applies linear changes of coordinates.
"""

import numpy as np
from numpy.polynomial import Polynomial
from scipy.spatial.distance import cdist

from utils.logger import get_logger

from .errors import (
    DimensionMismatchError,
    EmptyIntersectionError,
    InvalidParameterError,
    NumericalFailureError,
    SingularMatrixError,
)
from .matrices import as_hermitian, check_same_dimension, det, spectral_norm
from .polynomials import BivariatePolynomial, companion_roots, line_coordinates, substitute_affine

logger = get_logger('pencil')

TOL_CONTAIN = 1e-7
TOL_RESID = 1e-8
INTERPOLATION_TOL = 1e-8
DEFAULT_RESOLUTION = 64
MAX_REFINEMENTS = 4
REFINEMENT_STABILITY = 0.1
IMAGINARY_OFFSET = 0.1
PARTNER_ENLARGEMENT = 1.25
MULTIPLICITY_SAMPLES = 3
CDIST_CHUNK = 1024


def _validated(matrices, names):
    checked = [as_hermitian(M, name=name) for M, name in zip(matrices, names)]
    check_same_dimension(*checked)
    return checked


def eval_pencil(A1, A2, x, y):
    """det(x A1 + y A2 - I)."""
    A1, A2 = _validated((A1, A2), ('A1', 'A2'))
    n = A1.shape[0]
    return det(x * A1 + y * A2 - np.eye(n))


def _chebyshev_nodes(count):
    return np.cos(np.pi * (np.arange(count) + 0.5) / count)


def pencil_polynomial(A1, A2, tol=INTERPOLATION_TOL):
    """
    Determining polynomial of the pair by tensor Chebyshev interpolation.

    The pencil is evaluated at (N+1)^2 Chebyshev nodes in the variables
    X = ||A1|| x, Y = ||A2|| y, and the tensor Vandermonde system is solved
    for all monomials X^i Y^j with i, j <= N. Monomials with i + j > N must
    come out negligible; they are then dropped.
    """
    A1, A2 = _validated((A1, A2), ('A1', 'A2'))
    n = A1.shape[0]
    s1 = spectral_norm(A1) or 1.0
    s2 = spectral_norm(A2) or 1.0
    B1, B2 = A1 / s1, A2 / s2

    nodes = _chebyshev_nodes(n + 1)
    X, Y = np.meshgrid(nodes, nodes, indexing='ij')
    stack = X[..., None, None] * B1 + Y[..., None, None] * B2 - np.eye(n)
    values = np.linalg.det(stack).real

    V = np.vander(nodes, n + 1, increasing=True)
    Z = np.linalg.solve(V, values)
    coeffs = np.linalg.solve(V, Z.T).T

    i, j = np.indices(coeffs.shape)
    scale = np.max(np.abs(coeffs))
    excess = np.max(np.abs(coeffs[i + j > n]), initial=0.0)
    if excess > tol * scale:
        raise NumericalFailureError(
            f"pencil interpolation inconsistent: degree>{n} coefficients reach {excess / scale:.2e} relative"
        )
    coeffs[i + j > n] = 0.0
    logger.debug(f"pencil_polynomial: N={n}, truncated excess {excess / scale:.2e}")
    return BivariatePolynomial(coeffs).scaled(s1, s2).normalized()


def restrict_to_line(P, L):
    """P along the arclength parametrization of L starting at its point nearest the origin."""
    Q = line_coordinates(P, L)
    return Polynomial(Q.coeffs[0, :])


def line_containment(P, L, tol=TOL_CONTAIN):
    """Largest m such that (alpha x + beta y - 1)^m divides P numerically."""
    Q = line_coordinates(P, L)
    scale = Q.norm
    if scale == 0.0:
        raise InvalidParameterError("line containment needs a nonzero polynomial")
    multiplicity = 0
    while multiplicity <= Q.degree and np.linalg.norm(Q.coeffs[multiplicity, :]) <= tol * scale:
        multiplicity += 1
    return multiplicity


def pencil_hyperplane_multiplicity(matrices, coefficients, tol=TOL_CONTAIN,
                                   samples=MULTIPLICITY_SAMPLES, seed=0):
    """
    Multiplicity of {sum c_i x_i = 1} in the spectrum of a Hermitian pencil.

    Along a generic real point of the hyperplane the order of vanishing of
    det(sum x_i M_i - I) equals the nullity of the (Hermitian) pencil there,
    so the multiplicity is the smallest nullity over a few random points.
    """
    names = [f'M{i + 1}' for i in range(len(matrices))]
    mats = _validated(matrices, names)
    c = np.asarray(coefficients, dtype=float)
    if c.shape != (len(mats),):
        raise DimensionMismatchError(f"need {len(mats)} hyperplane coefficients, got {c.shape}")
    if not np.any(c):
        raise InvalidParameterError("hyperplane coefficients must not all vanish")
    norms = np.array([spectral_norm(M) for M in mats])
    n = mats[0].shape[0]

    base = c / (c @ c)
    Q, _ = np.linalg.qr(c.reshape(-1, 1), mode='complete')
    tangent = Q[:, 1:]
    radius = 1.0 / np.linalg.norm(c)

    rng = np.random.default_rng(seed)
    counts = []
    for _ in range(samples):
        point = base + radius * tangent @ rng.uniform(-1.0, 1.0, size=tangent.shape[1])
        H = sum(p * M for p, M in zip(point, mats)) - np.eye(n)
        eigenvalues = np.linalg.eigvalsh(H)
        size = float(np.abs(point) @ norms) + 1.0
        counts.append(int(np.count_nonzero(np.abs(eigenvalues) <= tol * size)))
    return min(counts)


def _fiber_offsets(rho, resolution, extend=0.0):
    step = 2.0 * rho / (resolution - 1)
    extra = int(np.ceil(extend * rho / step - 1e-9)) if extend else 0
    real = -rho + step * np.arange(-extra, resolution + extra)
    return np.concatenate([real, real + 1j * IMAGINARY_OFFSET * rho])


def _fiber_points(P, D, offsets):
    x0, y0 = D.center
    points = []

    ys = y0 + offsets
    roots, vanishing = companion_roots(P.x_slice(ys))
    for y, xs, whole in zip(ys, roots, vanishing):
        if whole:
            xs = x0 + offsets
        points.extend((x, y) for x in xs)

    xs_fixed = x0 + offsets
    roots, vanishing = companion_roots(P.y_slice(xs_fixed))
    for x, ys_found, whole in zip(xs_fixed, roots, vanishing):
        if whole:
            ys_found = y0 + offsets
        points.extend((x, y) for y in ys_found)

    if not points:
        return np.empty((0, 2), dtype=complex)
    points = np.array(points, dtype=complex)
    keep = D.contains(points[:, 0], points[:, 1])
    points = points[keep]
    if points.size:
        values = np.abs(P(points[:, 0], points[:, 1]))
        keep = values <= TOL_RESID * np.maximum(P.abs_scale(points[:, 0], points[:, 1]), 1.0)
        points = points[keep]
    return points


def curve_samples(P, D, resolution=DEFAULT_RESOLUTION):
    """
    Points of {P = 0} inside the polydisk D.

    Fibers y = y0 + s and x = x0 + s are taken on a uniform real grid of
    [-rho, rho] and on the same grid shifted by 0.1 rho i; each fiber is
    solved by companion-matrix eigenvalues.
    """
    if resolution < 8:
        raise InvalidParameterError(f"resolution must be at least 8, got {resolution}")
    return _fiber_points(P, D, _fiber_offsets(D.radius, resolution))


def _line_points(L, D, offsets):
    x0, y0 = D.center
    points = []
    if L.alpha != 0.0:
        ys = y0 + offsets
        points.append(np.column_stack([(1.0 - L.beta * ys) / L.alpha, ys]))
    if L.beta != 0.0:
        xs = x0 + offsets
        points.append(np.column_stack([xs, (1.0 - L.alpha * xs) / L.beta]))
    points = np.concatenate(points)
    return points[D.contains(points[:, 0], points[:, 1])]


def _embed(points):
    return np.column_stack([points[:, 0].real, points[:, 0].imag, points[:, 1].real, points[:, 1].imag])


def directed_distance(source, target):
    """max over source of the Euclidean distance (in C^2) to the nearest target point."""
    if len(source) == 0:
        return 0.0
    if len(target) == 0:
        return float('inf')
    src, tgt = _embed(source), _embed(target)
    worst = 0.0
    for start in range(0, len(src), CDIST_CHUNK):
        worst = max(worst, float(cdist(src[start:start + CDIST_CHUNK], tgt).min(axis=1).max()))
    return worst


def _hausdorff_once(P, L, D, resolution):
    offsets = _fiber_offsets(D.radius, resolution)
    curve = _fiber_points(P, D, offsets)
    line = _line_points(L, D, offsets)
    if len(curve) == 0:
        raise EmptyIntersectionError(f"the curve {{P = 0}} has no points in the polydisk {D}", which='curve')
    if len(line) == 0:
        raise EmptyIntersectionError(f"the line {L} does not meet the polydisk {D}", which='line')

    # Partners are looked up in a slightly larger disk on the same fibers
    big = D.enlarged(PARTNER_ENLARGEMENT)
    wide = _fiber_offsets(D.radius, resolution, extend=PARTNER_ENLARGEMENT - 1.0)
    curve_big = _fiber_points(P, big, wide)
    line_big = _line_points(L, big, wide)
    return max(directed_distance(curve, line_big), directed_distance(line, curve_big))


def hausdorff_to_line(P, L, D, resolution=DEFAULT_RESOLUTION, refinements=MAX_REFINEMENTS):
    """
    Sampled Hausdorff distance between {P = 0} and L inside D.

    Resolution is doubled until the value moves by less than 10%, at most
    `refinements` times.
    """
    if resolution < 8:
        raise InvalidParameterError(f"resolution must be at least 8, got {resolution}")
    floor = 1e-12 * (1.0 + max(abs(c) for c in D.center) + D.radius)
    value = _hausdorff_once(P, L, D, resolution)
    for _ in range(refinements):
        resolution *= 2
        refined = _hausdorff_once(P, L, D, resolution)
        settled = abs(refined - value) <= REFINEMENT_STABILITY * max(refined, value) or max(refined, value) <= floor
        value = refined
        if settled:
            break
    logger.debug(f"hausdorff_to_line: {L} in radius {D.radius:g} -> {value:.3e} (resolution {resolution})")
    return value


def transform_pencil(A1, A2, c):
    """B1 = c11 A1 + c12 A2, B2 = c21 A1 + c22 A2."""
    A1, A2 = _validated((A1, A2), ('A1', 'A2'))
    c = np.asarray(c, dtype=float)
    if c.shape != (2, 2):
        raise DimensionMismatchError(f"transform must be 2x2, got shape {c.shape}")
    if abs(np.linalg.det(c)) <= 1e-10:
        raise SingularMatrixError("coordinate transform is singular")
    B1 = c[0, 0] * A1 + c[0, 1] * A2
    B2 = c[1, 0] * A1 + c[1, 1] * A2
    return B1, B2


def transform_polynomial(P, c):
    """The polynomial v -> P(c^T v), the determining polynomial of transform_pencil."""
    c = np.asarray(c, dtype=float)
    if c.shape != (2, 2):
        raise DimensionMismatchError(f"transform must be 2x2, got shape {c.shape}")
    return substitute_affine(P, (0.0, c[0, 0], c[1, 0]), (0.0, c[0, 1], c[1, 1]))


def implicit_branch(P, x0, ys):
    """Continue the root x(y) of P(x, y) = 0 from x(0) = x0 along ys in order."""
    current = complex(x0)
    branch = []
    for y in ys:
        roots, vanishing = companion_roots(P.x_slice(np.array([y])))
        if vanishing[0] or roots[0].size == 0:
            raise NumericalFailureError(f"no root to continue at y = {y}")
        current = roots[0][np.argmin(np.abs(roots[0] - current))]
        branch.append(current)
    return np.array(branch)
