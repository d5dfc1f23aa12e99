"""
Quantitative spectral continuity.

If the spectrum of (A1, A2) near (1/alpha, 0) stays within Hausdorff
distance eps of the line {alpha x + beta y = 1} and ||A2|| = |beta|, the
eigenvector of A1 for alpha is an O(sqrt(eps))-eigenvector of A2.
Peeling such vectors off one at a time bounds ||[A1, A2]|| by the
distance from the spectrum to a family of lines.

All measurements are taken for the rescaled pair (A1/alpha, A2) against
the line {x + beta y = 1} in the polydisk of radius rho around (1, 0).
"""

from dataclasses import dataclass, field

import numpy as np

from utils.logger import get_logger

from .errors import EmptyIntersectionError, InvalidParameterError
from .matrices import (
    as_hermitian,
    check_same_dimension,
    commutator_norm,
    compress,
    eig_hermitian,
    orthogonal_complement,
    spectral_norm,
)
from .pencil import DEFAULT_RESOLUTION, hausdorff_to_line, pencil_polynomial
from .polynomials import Line, PolyDisk, companion_roots

logger = get_logger('almost')

NORM_MATCH = 1e-8
ON_CURVE_TOL = 1e-8
ORDERING_GAP = 1e-8
MAX_COMMUTANT_DIMENSION = 8
DERIVATIVE_RINGS = 8
DERIVATIVE_SPOKES = 32


def epsilon_of_vector(A, xi):
    """Smallest eps for which xi is an eps-eigenvector of A."""
    A = as_hermitian(A, name='A')
    xi = np.asarray(xi, dtype=complex).ravel()
    if xi.shape[0] != A.shape[0]:
        raise InvalidParameterError(f"vector has length {xi.shape[0]}, matrix has dimension {A.shape[0]}")
    length = np.linalg.norm(xi)
    if length == 0.0:
        raise InvalidParameterError("epsilon_of_vector needs a nonzero vector")
    xi = xi / length
    image = A @ xi
    return float(np.linalg.norm(image - np.vdot(xi, image) * xi))


def block_compression(A2, P1):
    """P1 A2 P1 + (I - P1) A2 (I - P1): A2 with the off-diagonal blocks for P1 removed."""
    A2 = np.asarray(A2, dtype=complex)
    complement = np.eye(A2.shape[0]) - P1
    return P1 @ A2 @ P1 + complement @ A2 @ complement


def almost_bound(beta, epsilon, rho, slack=0.0):
    """
    sqrt(2|beta| d + d^2 + 8|beta|(1 + beta^2) eps / (rho - 4|beta| eps)) with
    slack d = | ||A2|| - |beta| |; inf when the denominator is not positive.
    """
    b = abs(beta)
    denominator = rho - 4.0 * b * epsilon
    if denominator <= 0.0:
        return float('inf')
    return float(np.sqrt(2.0 * b * slack + slack ** 2 + 8.0 * b * (1.0 + b * b) * epsilon / denominator))


def directional_derivative_check(P, beta, rho, rings=DERIVATIVE_RINGS, spokes=DERIVATIVE_SPOKES):
    """
    Check that g = dP/dx + beta dP/dy has no zero in {|x - 1| <= rho, |y| <= rho}.

    Along each y on a polar grid of the y-disk the zeros of g(., y) are
    found exactly; d is the smallest |g| over the product of the polar grids.
    Returns (ok, d).
    """
    g = P.partial(dx=1) + beta * P.partial(dy=1)
    radii = rho * np.linspace(0.0, 1.0, rings + 1)
    angles = 2.0 * np.pi * np.arange(spokes) / spokes
    polar = np.unique(np.round((radii[:, None] * np.exp(1j * angles)).ravel(), 15))

    ok = True
    roots, vanishing = companion_roots(g.x_slice(polar))
    for xs, whole in zip(roots, vanishing):
        if whole or np.any(np.abs(xs - 1.0) <= rho):
            ok = False
            break
    X, Y = np.meshgrid(1.0 + polar, polar, indexing='ij')
    d = float(np.min(np.abs(g(X, Y))))
    return ok, d


def c_diagnostic(norm_a2, epsilon, rho, d):
    """The curvature constant C of the continuity estimate, finite when d > 0."""
    if d <= 0.0:
        return float('inf')
    ratio = rho * norm_a2 / d
    denominator = rho - 4.0 * ratio * epsilon
    if denominator <= 0.0:
        return float('inf')
    return float(4.0 * np.sqrt(2.0) * (1.0 + ratio ** 2) ** 1.5 * rho / denominator ** 3)


def line_distance(A1, A2, alpha, beta, rho, resolution=DEFAULT_RESOLUTION):
    """Hausdorff distance from the spectrum of (A1/alpha, A2) to {x + beta y = 1} near (1, 0)."""
    P = pencil_polynomial(np.asarray(A1) / alpha, A2)
    return hausdorff_to_line(P, Line(1.0, beta), PolyDisk((1.0, 0.0), rho), resolution)


@dataclass(frozen=True, eq=False)
class AlmostReport:
    vector: np.ndarray
    epsilon_measured: float
    delta_bound: float
    delta_actual: float
    preconditions_ok: bool
    conditions: dict = field(default_factory=dict)
    c_diagnostic: float = float('inf')
    notes: tuple = ()

    def to_dict(self):
        vector = np.asarray(self.vector, dtype=complex)
        return {
            'vector': {'re': vector.real.tolist(), 'im': vector.imag.tolist()},
            'epsilon_measured': self.epsilon_measured,
            'delta_bound': self.delta_bound,
            'delta_actual': self.delta_actual,
            'preconditions_ok': self.preconditions_ok,
            'conditions': self.conditions,
            'c_diagnostic': self.c_diagnostic,
            'notes': list(self.notes),
        }


def almost_common_eigenvector(A1, A2, alpha, beta, rho, resolution=DEFAULT_RESOLUTION, slack=None):
    """
    Certify that the eigenvector of A1 for alpha is nearly an eigenvector of A2.

    With slack=None the hypothesis ||A2|| = |beta| must hold within 1e-8;
    otherwise | ||A2|| - |beta| | <= slack is required and the relaxed bound
    is reported. delta_bound is None when a precondition fails.
    """
    if alpha == 0:
        raise InvalidParameterError("alpha must be nonzero")
    if not rho > 0:
        raise InvalidParameterError(f"rho must be positive, got {rho}")
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    notes = []

    P = pencil_polynomial(A1 / alpha, A2)
    on_curve = bool(abs(P(1.0, 0.0)) <= ON_CURVE_TOL * max(float(P.abs_scale(1.0, 0.0)), 1.0))
    norm_a2 = spectral_norm(A2)
    mismatch = abs(norm_a2 - abs(beta))
    norm_ok = mismatch <= (NORM_MATCH if slack is None else max(slack, NORM_MATCH))
    derivative_ok, d = directional_derivative_check(P, beta, rho)

    eig = eig_hermitian(A1)
    nearest = int(np.argmin(np.abs(eig.eigenvalues - alpha)))
    vector = eig.vectors[:, nearest]
    if eig.indices_near(eig.eigenvalues[nearest], 1e-8 * max(eig.norm, 1.0)).size > 1:
        notes.append("eigenvalue nearest alpha is multiple; the first eigenvector of its cluster is used")
    delta_actual = epsilon_of_vector(A2, vector)

    try:
        epsilon = hausdorff_to_line(P, Line(1.0, beta), PolyDisk((1.0, 0.0), rho), resolution)
    except EmptyIntersectionError as e:
        epsilon = float('inf')
        notes.append(str(e))

    bound = almost_bound(beta, epsilon, rho, mismatch if slack is not None else 0.0)
    formula_ok = np.isfinite(bound)
    conditions = {
        'on_curve': on_curve,
        'norm_matches_beta': bool(norm_ok),
        'directional_derivative': bool(derivative_ok),
        'bound_formula': bool(formula_ok),
    }
    preconditions_ok = all(conditions.values())
    if not on_curve:
        notes.append(f"(1/alpha, 0) is not on the curve: P = {float(P(1.0, 0.0)):.3e}")
    if not norm_ok:
        notes.append(f"||A2|| = {norm_a2:.12g} differs from |beta| = {abs(beta):.12g}")
    if not derivative_ok:
        notes.append("alpha dP/dx + beta dP/dy vanishes in the bidisk")
    if not formula_ok:
        notes.append(f"rho - 4|beta| eps <= 0 with eps = {epsilon:.3e}")
    notes.append("eps is a sampled Hausdorff distance; the bound holds up to sampling error")

    logger.info(f"almost eigenvector alpha={alpha:g}, beta={beta:g}: eps={epsilon:.3e}, "
                f"bound={bound:.3e}, actual={delta_actual:.3e}, preconditions={preconditions_ok}")
    return AlmostReport(
        vector=vector,
        epsilon_measured=float(epsilon),
        delta_bound=bound if preconditions_ok else None,
        delta_actual=delta_actual,
        preconditions_ok=preconditions_ok,
        conditions=conditions,
        c_diagnostic=c_diagnostic(norm_a2, epsilon, rho, d),
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class CommutantLevel:
    """One deflation step: its eps, rho, constant C, the removed pair and the bound increment."""

    epsilon: float
    rho: float
    C: float
    dimension: int
    alpha: float
    beta: float
    increment: float

    def to_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True, eq=False)
class CommutantBoundReport:
    bound: float
    actual: float
    per_level: tuple
    line_family: tuple
    diverged: bool = False
    notes: tuple = ()

    def to_dict(self):
        return {
            'bound': self.bound,
            'actual': self.actual,
            'diverged': self.diverged,
            'per_level': [level.to_dict() for level in self.per_level],
            'line_family': [{'alpha': line.alpha, 'beta': line.beta, 'pairing': index}
                            for line, index in self.line_family],
            'notes': list(self.notes),
        }


def _ordered_spectrum(M, name):
    eig = eig_hermitian(M)
    values = eig.eigenvalues
    magnitudes = np.sort(np.abs(values))[::-1]
    scale = max(magnitudes[0], 1e-300)
    if magnitudes[-1] <= ORDERING_GAP * scale:
        raise InvalidParameterError(f"{name} has a zero eigenvalue")
    if magnitudes.size > 1 and np.min(-np.diff(magnitudes)) <= ORDERING_GAP * scale:
        raise InvalidParameterError(f"eigenvalues of {name} do not have distinct absolute values")
    return eig


def _safe_distance(A1, A2, alpha, beta, rho, resolution):
    try:
        return line_distance(A1, A2, alpha, beta, rho, resolution)
    except EmptyIntersectionError:
        return float('inf')


def pair_lines(A1, A2, rho, resolution=DEFAULT_RESOLUTION):
    """
    Greedy line family: for each beta (descending |beta|) the unused alpha with
    the smallest distance. Returns [(alpha, beta, distance)].
    """
    alphas = list(eig_hermitian(A1).eigenvalues)
    betas = sorted(eig_hermitian(A2).eigenvalues, key=abs, reverse=True)
    family = []
    for beta in betas:
        distances = [_safe_distance(A1, A2, alpha, beta, rho, resolution) for alpha in alphas]
        best = int(np.argmin(distances))
        family.append((float(alphas.pop(best)), float(beta), float(distances[best])))
    return family


def commutant_bound(A1, A2, rho, resolution=DEFAULT_RESOLUTION):
    """
    Upper bound for ||[A1, A2]|| from the distance between the spectrum and a
    family of lines {alpha_n(j) x + beta_j y = 1}.

    Each level removes the eigenvector of A1 paired with the largest
    remaining |beta|, adds sqrt(2) C sqrt(eps) ||A1|| with
    C = sqrt(8|beta|(1 + beta^2) / (rho - 4|beta| eps)), and passes
    eps' = 5 N C |beta|^(N-1) M^N sqrt(eps) and rho' = rho / 2 to the compression.
    Only the first eps is measured; later ones come from that update.
    """
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    n = check_same_dimension(A1, A2)
    if n > MAX_COMMUTANT_DIMENSION:
        raise InvalidParameterError(f"commutant bound supports N <= {MAX_COMMUTANT_DIMENSION}, got {n}")
    if not rho > 0:
        raise InvalidParameterError(f"rho must be positive, got {rho}")
    _ordered_spectrum(A1, 'A1')
    _ordered_spectrum(A2, 'A2')

    family = pair_lines(A1, A2, rho, resolution)
    alphas = [alpha for alpha, _, _ in family]
    original = sorted(eig_hermitian(A1).eigenvalues, reverse=True)
    line_family = tuple((Line(alpha, beta), int(np.argmin(np.abs(np.array(original) - alpha))))
                        for alpha, beta, _ in family)
    epsilon = max(distance for _, _, distance in family)
    M = max(abs(1.0 / alpha) + rho + 1.0 for alpha in alphas)

    notes = []
    levels = []
    bound = 0.0
    diverged = not np.isfinite(epsilon)
    if diverged:
        notes.append("no finite line family at the first level")
    level_rho = rho
    B1 = np.array(A1)
    remaining = list(family)
    while len(remaining) > 1 and not diverged:
        alpha, beta, _ = remaining.pop(0)
        b = abs(beta)
        denominator = level_rho - 4.0 * b * epsilon
        if denominator <= 0.0:
            diverged = True
            notes.append(f"rho - 4|beta| eps <= 0 at dimension {B1.shape[0]} (eps = {epsilon:.3e})")
            break
        C = float(np.sqrt(8.0 * b * (1.0 + b * b) / denominator))
        increment = np.sqrt(2.0) * C * np.sqrt(epsilon) * spectral_norm(B1)
        bound += increment
        levels.append(CommutantLevel(epsilon=float(epsilon), rho=level_rho, C=C, dimension=B1.shape[0],
                                     alpha=alpha, beta=beta, increment=float(increment)))

        # deflate by the eigenprojection of alpha
        eig = eig_hermitian(B1)
        vector = eig.vectors[:, [int(np.argmin(np.abs(eig.eigenvalues - alpha)))]]
        complement = orthogonal_complement(vector)
        B1 = compress(B1, complement)
        B1 = (B1 + B1.conj().T) / 2

        epsilon = 5.0 * n * C * b ** (n - 1) * M ** n * np.sqrt(epsilon)
        level_rho /= 2.0

    if diverged:
        bound = float('inf')
    actual = commutator_norm(A1, A2)
    logger.info(f"commutant bound N={n}: bound={bound:.3e}, actual={actual:.3e}, diverged={diverged}")
    return CommutantBoundReport(bound=float(bound), actual=actual, per_level=tuple(levels),
                                line_family=line_family, diverged=diverged, notes=tuple(notes))
