"""
Common invariant subspaces of Hermitian pairs.

Three families of tests live here:
  - line criteria for a common eigenspace (the pair and the pair with A1
    inverted must both contain the line through (1/lam, 0));
  - curve criteria through exterior powers, where a factor Gamma of degree
    k of the pencil polynomial is tested for a k-dimensional common
    invariant subspace;
  - residue conditions: contour integrals of the operator functions Psi_m
    built from the coefficients of a curve in the spectrum.
"""

from dataclasses import dataclass, field, replace
from math import prod

import numpy as np
from numpy.polynomial import polynomial as npoly

from utils.logger import get_logger

from .errors import (
    CoordinateChangeRequired,
    DimensionMismatchError,
    EmptyIntersectionError,
    InvalidParameterError,
    SingularMatrixError,
    SpectralGapError,
)
from .exterior import complement_operator, exterior_power, is_generic_multiset
from .gallery import bc2_relations
from .matrices import (
    as_hermitian,
    check_same_dimension,
    compress,
    det,
    eig_hermitian,
    inverse,
    is_singular,
    perturb,
    spectral_norm,
)
from .pencil import (
    DEFAULT_RESOLUTION,
    TOL_CONTAIN,
    TOL_RESID,
    hausdorff_to_line,
    line_containment,
    pencil_hyperplane_multiplicity,
    pencil_polynomial,
    transform_pencil,
    transform_polynomial,
)
from .polynomials import ZERO_TOL, Line, PolyDisk, circle_polynomial, curve_multiplicity, divide

logger = get_logger('decompose')

YES = 'yes'
NO = 'no'
INCONCLUSIVE = 'inconclusive'
EXIT_CODES = {YES: 0, NO: 1, INCONCLUSIVE: 2}

CONTOUR_NODES = 256
CLUSTER_TOL = 1e-8
EIGENVALUE_TOL = 1e-10
ISOLATION_GAP = 1e-8
DIVISIBILITY_TOL = 1e-8
ROOT_INFINITY = 1e8
AXIS_MATCH = 1e-6
ORTHONORMAL_TOL = 1e-10
AUTO_PERTURB_EPS = 0.5
DEFAULT_SHEARS = (0.5, -0.5, 0.25, -0.25, 1.0, -1.0, 2.0, 0.125)


@dataclass(frozen=True)
class ContourSpec:
    """Circle |w - center| = radius sampled at `nodes` equispaced points."""

    radius: float
    center: complex = 1.0
    nodes: int = CONTOUR_NODES

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidParameterError(f"contour radius must be positive, got {self.radius}")
        if self.nodes < 8:
            raise InvalidParameterError(f"contour needs at least 8 nodes, got {self.nodes}")

    @classmethod
    def around(cls, spectrum, center=1.0, nodes=CONTOUR_NODES, cluster_tol=CLUSTER_TOL):
        """Radius half the distance from center to the rest of the spectrum."""
        distances = np.abs(np.asarray(spectrum) - center)
        scale = max(float(np.max(np.abs(spectrum), initial=0.0)), 1.0)
        outside = distances[distances > cluster_tol * scale]
        radius = 0.5 * float(np.min(outside)) if outside.size else 0.5
        return cls(radius=radius, center=center, nodes=nodes)

    def validate(self, spectrum):
        distances = np.abs(np.asarray(spectrum) - self.center)
        crowding = (distances >= 0.5 * self.radius) & (distances <= 1.5 * self.radius)
        if np.any(crowding):
            gap = float(np.min(np.abs(distances[crowding] - self.radius)))
            raise SpectralGapError(
                f"spectrum within the annulus around the contour |w - {self.center}| = {self.radius:g}",
                gap=gap,
            )

    def points(self):
        """Nodes w_j and weights so that (1/2 pi i) integral f dw ~ sum weights_j f(w_j)."""
        theta = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        offsets = self.radius * np.exp(1j * theta)
        return self.center + offsets, offsets / self.nodes


@dataclass(frozen=True)
class LineCheck:
    line: Line
    multiplicity: int
    required: int = 1
    label: str = ''

    @property
    def passed(self):
        return self.multiplicity >= self.required

    def to_dict(self):
        return {
            'alpha': self.line.alpha,
            'beta': self.line.beta,
            'multiplicity': self.multiplicity,
            'required': self.required,
            'label': self.label,
            'passed': self.passed,
        }


@dataclass(frozen=True, eq=False)
class DecomposabilityReport:
    """Verdict on a candidate common invariant subspace."""

    verdict: str
    k: int
    basis: np.ndarray
    invariance_residual: float
    line_checks: tuple = ()
    genericity: bool = True
    notes: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    @property
    def exit_code(self):
        return EXIT_CODES[self.verdict]

    def to_dict(self):
        basis = np.asarray(self.basis, dtype=complex)
        return {
            'verdict': self.verdict,
            'k': self.k,
            'basis': {'re': basis.real.tolist(), 'im': basis.imag.tolist()},
            'invariance_residual': self.invariance_residual,
            'line_checks': [check.to_dict() for check in self.line_checks],
            'genericity': self.genericity,
            'notes': list(self.notes),
            'diagnostics': self.diagnostics,
        }


@dataclass(frozen=True)
class LineResidues:
    r1: float
    r3: float
    r3_inv: float

    def __iter__(self):
        return iter((self.r1, self.r3, self.r3_inv))


@dataclass(frozen=True)
class MomentResiduals:
    first: float
    second: float
    x_prime: float
    x_second: float

    def __iter__(self):
        return iter((self.first, self.second))


def _cluster(decomposition, value, tol):
    indices = decomposition.indices_near(value, tol)
    if indices.size == 0:
        raise InvalidParameterError(f"{value:.12g} is not an eigenvalue within {tol:.1e}")
    return indices


def _check_isolated(decomposition, value, indices, floor):
    others = np.delete(decomposition.eigenvalues, indices)
    if others.size:
        gap = float(np.min(np.abs(others - value)))
        if gap <= floor:
            raise SpectralGapError(f"eigenvalue {value:.12g} is not isolated: nearest other eigenvalue at {gap:.2e}", gap=gap)


def eigenspace_projection(A, lam, cluster_tol=None, decomposition=None):
    """Orthogonal projection onto the eigenvectors with |lambda_j - lam| <= cluster_tol."""
    eig = decomposition or eig_hermitian(A)
    tol = CLUSTER_TOL * max(eig.norm, 1e-300) if cluster_tol is None else cluster_tol
    return eig.projection(_cluster(eig, lam, tol))


def t_operator(A, lam, cluster_tol=None, decomposition=None):
    """Reduced resolvent T = sum over mu != lam of lam / (mu - lam) P_mu."""
    eig = decomposition or eig_hermitian(A)
    norm = max(eig.norm, 1e-300)
    tol = EIGENVALUE_TOL * norm if cluster_tol is None else cluster_tol
    indices = _cluster(eig, lam, tol)
    _check_isolated(eig, lam, indices, ISOLATION_GAP * norm)
    weights = np.zeros(eig.n)
    mask = np.ones(eig.n, dtype=bool)
    mask[indices] = False
    weights[mask] = lam / (eig.eigenvalues[mask] - lam)
    return eig.spectral_function(weights)


def inverse_t_operator(A, lam, cluster_tol=None, decomposition=None):
    """
    T(A^{-1}) at 1/lam written through the spectrum of A:
    sum over mu != lam of mu / (lam - mu) P_mu. Finite even when A is singular.
    """
    eig = decomposition or eig_hermitian(A)
    norm = max(eig.norm, 1e-300)
    tol = EIGENVALUE_TOL * norm if cluster_tol is None else cluster_tol
    indices = _cluster(eig, lam, tol)
    _check_isolated(eig, lam, indices, ISOLATION_GAP * norm)
    weights = np.zeros(eig.n)
    mask = np.ones(eig.n, dtype=bool)
    mask[indices] = False
    mu = eig.eigenvalues[mask]
    weights[mask] = mu / (lam - mu)
    return eig.spectral_function(weights)


def line_residue_check(A1, A2, lam, a):
    """
    Residual norms for the line {lam x + a y = 1} through (1/lam, 0).

    With A1 -> A1/lam and A2 -> A2/a: r1 = ||P1 A2 P1 - P1||,
    r3 = ||P1 A2 T A2 P1|| and r3_inv the same with T taken for A1^{-1}.
    """
    if lam == 0 or a == 0:
        raise InvalidParameterError("line residues need lam != 0 and a != 0")
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    A1h = A1 / lam
    A2h = A2 / a
    eig = eig_hermitian(A1h)
    indices = _cluster(eig, 1.0, EIGENVALUE_TOL * max(eig.norm, 1.0))
    P1 = eig.projection(indices)
    T = t_operator(A1h, 1.0, decomposition=eig)
    T_inv = inverse_t_operator(A1h, 1.0, decomposition=eig)
    r1 = spectral_norm(P1 @ A2h @ P1 - P1)
    r3 = spectral_norm(P1 @ A2h @ T @ A2h @ P1)
    r3_inv = spectral_norm(P1 @ A2h @ T_inv @ A2h @ P1)
    logger.debug(f"line residues at lam={lam:g}, a={a:g}: {r1:.2e}, {r3:.2e}, {r3_inv:.2e}")
    return LineResidues(r1, r3, r3_inv)


def closed_form_line_residues(A1, A2, lam, a):
    """
    Residues at w = 1 of Psi_1 and Psi_2 for the line {lam x + a y = 1}:
      Res Psi_1 = P1 A2 P1 - a P1
      Res Psi_2 = -[P1 A2 T A2 P1 + P1 (A2 P1 - a) A2 T + T (A2 P1 - a) A2 P1]
    """
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    n = check_same_dimension(A1, A2)
    eig = eig_hermitian(A1)
    P1 = eig.projection(_cluster(eig, lam, EIGENVALUE_TOL * max(eig.norm, 1.0)))
    T = t_operator(A1, lam, decomposition=eig)
    shifted = A2 @ P1 - a * np.eye(n)
    first = P1 @ A2 @ P1 - a * P1
    second = -(P1 @ A2 @ T @ A2 @ P1 + P1 @ shifted @ A2 @ T + T @ shifted @ A2 @ P1)
    return first, second


def psi_residue_matrix(A1, A2, R, m, lam, contour=None, nodes=CONTOUR_NODES):
    """Trapezoidal value of (1/2 pi i) times the contour integral of Psi_m around w = 1."""
    if m < 1:
        raise InvalidParameterError(f"residue order m must be >= 1, got {m}")
    if lam == 0:
        raise InvalidParameterError("lam must be nonzero")
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    R = R.normalized()
    k = R.total_degree(ZERO_TOL)
    if k < 1:
        raise InvalidParameterError("curve polynomial must have positive degree")
    C = R.coeffs

    eig = eig_hermitian(A1)
    mu = eig.eigenvalues / lam
    _cluster(eig, lam, EIGENVALUE_TOL * max(eig.norm, 1.0))
    if contour is None:
        contour = ContourSpec.around(mu, 1.0, nodes)
    contour.validate(mu)

    slope = R.partial(dx=1)(1.0 / lam, 0.0)
    if abs(slope) <= 1e-10 * R.norm:
        logger.warning(f"dR/dx vanishes at (1/{lam:g}, 0); the residue conditions assume a smooth transversal branch")

    V = eig.vectors
    A2e = V.conj().T @ A2 @ V
    top = min(m, k)
    total = np.zeros_like(A2e)
    w_nodes, weights = contour.points()
    for w, weight in zip(w_nodes, weights):
        g = 1.0 / (w - mu)
        X = A2e * g[None, :]
        leading = w ** k - sum(w ** (k - j) * C[j, 0] / lam ** j for j in range(1, k + 1))
        powers = [np.eye(eig.n, dtype=complex)]
        for _ in range(top):
            powers.append(powers[-1] @ X)
        inner = leading * powers[top]
        for n in range(1, top + 1):
            c_n = sum(w ** (k - j) * C[j - n, n] / lam ** (j - n) for j in range(n, k + 1))
            inner = inner - c_n * powers[top - n]
        psi = g[:, None] * inner
        if m > k:
            psi = psi @ np.linalg.matrix_power(X, m - k)
        total += weight * psi
    return V @ total @ V.conj().T


def psi_residue(A1, A2, R, m, lam, contour=None, nodes=CONTOUR_NODES):
    """Operator norm of the residue at w = 1 of Psi_m."""
    return spectral_norm(psi_residue_matrix(A1, A2, R, m, lam, contour, nodes))


def verify_invariant_subspace(B, basis):
    """||(I - P) B P|| for P the projector onto span(basis)."""
    B = as_hermitian(B, name='B')
    Q = np.asarray(basis, dtype=complex)
    if Q.ndim == 1:
        Q = Q.reshape(-1, 1)
    if Q.shape[0] != B.shape[0]:
        raise DimensionMismatchError(f"basis has {Q.shape[0]} rows, B has dimension {B.shape[0]}")
    if Q.shape[1] == 0:
        return 0.0
    if np.linalg.norm(Q.conj().T @ Q - np.eye(Q.shape[1])) > ORTHONORMAL_TOL:
        raise InvalidParameterError("basis columns are not orthonormal")
    BQ = B @ Q
    return spectral_norm(BQ - Q @ (Q.conj().T @ BQ))


def implicit_derivatives(P, x0, tol=TOL_RESID):
    """First and second derivative at y = 0 of the branch x(y) of {P = 0} through (x0, 0)."""
    value = P(x0, 0.0)
    if abs(value) > tol * max(float(P.abs_scale(x0, 0.0)), 1.0):
        raise InvalidParameterError(f"({x0:g}, 0) is not on the curve: P = {float(value):.3e}")
    Px = float(P.partial(dx=1)(x0, 0.0))
    if abs(Px) < 1e-10 * max(P.norm, 1.0):
        raise SingularMatrixError(f"dP/dx vanishes at ({x0:g}, 0): singular point of the curve")
    Py = float(P.partial(dy=1)(x0, 0.0))
    Pxx = float(P.partial(dx=2)(x0, 0.0))
    Pxy = float(P.partial(dx=1, dy=1)(x0, 0.0))
    Pyy = float(P.partial(dy=2)(x0, 0.0))
    ratio = Py / Px
    return -ratio, -(Pxx * ratio ** 2 - 2.0 * Pxy * ratio + Pyy) / Px


def first_moments_check(A1, A2, lam):
    """
    Compare the first two moments of A2 along the eigenvector of A1 for lam
    with the derivatives of the spectral curve: returns
    ||P1 A2 P1 + x'(0) P1|| and ||P1 A2 T A2 P1 - x''(0)/2 P1||.
    """
    if lam == 0:
        raise InvalidParameterError("lam must be nonzero")
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    eig = eig_hermitian(A1)
    indices = _cluster(eig, lam, CLUSTER_TOL * max(eig.norm, 1.0))
    if indices.size != 1:
        raise InvalidParameterError(f"eigenvalue {lam:g} has multiplicity {indices.size}; need a simple eigenvalue")
    P = pencil_polynomial(A1 / lam, A2)
    x1, x2 = implicit_derivatives(P, 1.0)
    P1 = eig.projection(indices)
    T = t_operator(A1, lam, decomposition=eig)
    first = spectral_norm(P1 @ A2 @ P1 + x1 * P1)
    second = spectral_norm(P1 @ A2 @ T @ A2 @ P1 - 0.5 * x2 * P1)
    return MomentResiduals(first=first, second=second, x_prime=x1, x_second=x2)


def common_eigenspace_test(A1, A2, lam, a, rho=None, eps=None, tol_contain=TOL_CONTAIN,
                           tol_resid=TOL_RESID, auto_perturb=True, resolution=DEFAULT_RESOLUTION):
    """
    Is the eigenspace of A1 for lam an eigenspace of A2 (eigenvalue a)?

    Checks the line {lam x + a y = 1} in the spectrum of (A1, A2), the line
    {x/lam + a y = 1} in the spectrum of (A1^{-1}, A2), and confirms by
    direct invariance. When A1 is singular the pair is first replaced by
    the identity-shift family A(eps, lam), which keeps both lines.
    """
    if lam == 0:
        raise InvalidParameterError("lam must be nonzero")
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    notes = []
    W1, W2 = A1, A2
    if eps is not None:
        W1, W2 = perturb(A1, eps, lam), perturb(A2, eps, a)
        notes.append(f"pair replaced by the identity-shift family with eps={eps:g}")
    if is_singular(W1):
        if not auto_perturb:
            raise SingularMatrixError("A1 is singular; pass eps to shift it by the identity family")
        W1, W2 = perturb(W1, AUTO_PERTURB_EPS, lam), perturb(W2, AUTO_PERTURB_EPS, a)
        notes.append(f"A1 singular: shifted with eps={AUTO_PERTURB_EPS:g}")

    eig = eig_hermitian(W1)
    norm = max(eig.norm, 1e-300)
    indices = _cluster(eig, lam, CLUSTER_TOL * norm)
    _check_isolated(eig, lam, indices, 10 * CLUSTER_TOL * norm)
    rank = int(indices.size)
    basis = eig.basis(indices)

    line = Line(lam, a)
    P = pencil_polynomial(W1, W2)
    W1_inv = inverse(W1)
    checks = (
        LineCheck(line, line_containment(P, line, tol_contain), rank, 'pair'),
        LineCheck(Line(1.0 / lam, a), line_containment(pencil_polynomial(W1_inv, W2), Line(1.0 / lam, a), tol_contain),
                  rank, 'inverse pair'),
    )
    plane = pencil_hyperplane_multiplicity([W1, W1_inv, W2], (lam, 1.0 / lam, a), tol_contain)

    residual = verify_invariant_subspace(A2, basis)
    invariant = residual <= tol_resid * max(spectral_norm(A2), 1e-300)
    diagnostics = {'plane_multiplicity': plane, 'rank': rank}
    if rho is not None:
        try:
            diagnostics['local_distance'] = hausdorff_to_line(P, line, PolyDisk((1.0 / lam, 0.0), rho), resolution)
        except EmptyIntersectionError as e:
            notes.append(str(e))

    if all(check.passed for check in checks) and invariant:
        verdict = YES
    else:
        verdict = NO
        notes.extend(f"{check.label} line {check.line} has multiplicity {check.multiplicity} < {check.required}"
                     for check in checks if not check.passed)
        if not invariant:
            notes.append(f"eigenspace is not invariant under A2 (residual {residual:.3e})")
    logger.info(f"common eigenspace test lam={lam:g}, a={a:g}: {verdict}")
    return DecomposabilityReport(verdict=verdict, k=rank, basis=basis, invariance_residual=residual,
                                 line_checks=checks, genericity=True, notes=tuple(notes), diagnostics=diagnostics)


def common_eigenspace_tuple(A1, others, lam, coefficients, **kwargs):
    """Common eigenspace of A1 and every matrix in others, one pair at a time."""
    if len(others) != len(coefficients):
        raise DimensionMismatchError("need one eigenvalue coefficient per matrix")
    reports = [common_eigenspace_test(A1, A, lam, a, **kwargs) for A, a in zip(others, coefficients)]
    verdict = YES if all(report.verdict == YES for report in reports) else NO
    first = reports[0]
    return DecomposabilityReport(
        verdict=verdict,
        k=first.k,
        basis=first.basis,
        invariance_residual=max(report.invariance_residual for report in reports),
        line_checks=tuple(check for report in reports for check in report.line_checks),
        genericity=True,
        notes=tuple(note for report in reports for note in report.notes),
        diagnostics={'pairwise_verdicts': [report.verdict for report in reports]},
    )


def _axis_eigenvalues(coefficients, k, axis):
    coefficients = np.asarray(coefficients, dtype=float)
    scale = np.max(np.abs(coefficients))
    if coefficients.size <= k or abs(coefficients[k]) <= 1e-10 * scale:
        raise CoordinateChangeRequired(f"Gamma restricted to the {axis}-axis has degree < {k}; shear the coordinates")
    roots = npoly.polyroots(coefficients[:k + 1])
    if np.any(np.abs(roots) > ROOT_INFINITY):
        raise CoordinateChangeRequired(f"Gamma meets the {axis}-axis at infinity; shear the coordinates")
    return 1.0 / roots.real


def _match_eigenvalues(decomposition, values, tol):
    used = []
    for value in values:
        order = [int(i) for i in np.argsort(np.abs(decomposition.eigenvalues - value)) if int(i) not in used]
        if not order or abs(decomposition.eigenvalues[order[0]] - value) > tol:
            return None
        used.append(order[0])
    return sorted(used)


def curve_decomposability_test(A, B, k, Gamma, tol_contain=TOL_CONTAIN, tol_resid=TOL_RESID,
                               divisibility_tol=DIVISIBILITY_TOL, gap_tol=None):
    """
    Does the factor Gamma (degree k) of the pencil polynomial come from a
    k-dimensional common invariant subspace?

    The eigenvalues lam_i of A and mu_i of B on the subspace are read off
    the axis intersections of Gamma. With lam = prod lam_i and mu = prod mu_i
    the test requires {lam x + mu y = 1} in the spectrum of the k-th exterior
    powers of (A, B), and {(det A / lam) x + mu y = 1} in the spectrum of
    (det A * wedge^k A^{-1}, wedge^k B). Genericity of {lam_i} is a
    hypothesis: without it the verdict is inconclusive.
    """
    A = as_hermitian(A, name='A')
    B = as_hermitian(B, name='B')
    n = check_same_dimension(A, B)
    if not 1 <= k <= n:
        raise InvalidParameterError(f"subspace dimension k={k} outside 1..{n}")
    degree = Gamma.total_degree(ZERO_TOL)
    if degree != k:
        raise InvalidParameterError(f"Gamma has total degree {degree}, expected k={k}")
    G = Gamma.trimmed(ZERO_TOL).normalized()
    if is_singular(A):
        raise CoordinateChangeRequired("A is singular; shear the pair so that A becomes invertible")

    lams = _axis_eigenvalues(G.coeffs[:, 0], k, 'x')
    mus = _axis_eigenvalues(G.coeffs[0, :], k, 'y')
    eig = eig_hermitian(A)
    bnorm = max(spectral_norm(B), 1e-300)
    notes = []

    _, division_residual = divide(pencil_polynomial(A, B), G)
    divides = division_residual <= divisibility_tol
    diagnostics = {'division_residual': division_residual, 'axis_lambdas': lams.tolist(), 'axis_mus': mus.tolist()}

    indices = _match_eigenvalues(eig, lams, AXIS_MATCH * max(eig.norm, 1.0))
    if indices is None:
        notes.append("x-axis intersections of Gamma do not match eigenvalues of A")
        verdict = NO if not divides else INCONCLUSIVE
        return DecomposabilityReport(verdict=verdict, k=k, basis=np.zeros((n, 0), dtype=complex),
                                     invariance_residual=float('nan'), genericity=False,
                                     notes=tuple(notes), diagnostics=diagnostics)

    basis = eig.basis(indices)
    residual = verify_invariant_subspace(B, basis)
    snapped = eig.eigenvalues[indices]
    lam = float(prod(snapped))
    mu = float(prod(mus))
    diagnostics.update(lam=lam, mu=mu)

    def report(verdict, checks=(), generic=True):
        logger.info(f"curve decomposability k={k}: {verdict}")
        return DecomposabilityReport(verdict=verdict, k=k, basis=basis, invariance_residual=residual,
                                     line_checks=tuple(checks), genericity=generic,
                                     notes=tuple(notes), diagnostics=diagnostics)

    if not divides:
        notes.append(f"Gamma does not divide the pencil polynomial (relative residual {division_residual:.2e})")
        return report(NO)

    genericity = is_generic_multiset(A, snapped, gap_tol=gap_tol, decomposition=eig)
    diagnostics['collisions'] = [list(subset) for subset, _ in genericity.collisions]
    if not genericity.generic:
        notes.append(f"multiset {tuple(np.round(snapped, 12))} is not generic; the criterion does not apply")
        return report(INCONCLUSIVE, generic=False)

    det_a = det(A).real
    wedge_b = exterior_power(B, k)
    first = Line(lam, mu)
    second = Line(det_a / lam, mu)
    checks = (
        LineCheck(first, pencil_hyperplane_multiplicity([exterior_power(A, k), wedge_b], (lam, mu), tol_contain),
                  1, 'exterior pair'),
        LineCheck(second, pencil_hyperplane_multiplicity([complement_operator(A, k), wedge_b], (det_a / lam, mu),
                                                         tol_contain), 1, 'complementary pair'),
    )
    if not all(check.passed for check in checks):
        notes.extend(f"{check.label} line {check.line} is not in the spectrum" for check in checks if not check.passed)
        return report(NO, checks)
    if residual > tol_resid * bnorm:
        notes.append(f"line checks pass but invariance residual is {residual:.3e}")
        return report(NO, checks)
    return report(YES, checks)


def _shear_transforms(shears):
    for t in shears:
        yield np.array([[1.0, t], [0.0, 1.0]])
    for s in shears:
        yield np.array([[1.0, 0.0], [s, 1.0]])


def decompose_pair(A, B, k, Gamma, shears=DEFAULT_SHEARS, tol_resid=TOL_RESID, **kwargs):
    """
    curve_decomposability_test, retried in sheared coordinates (A + tB, B)
    or (A, B + sA) when A is singular or an axis section of Gamma degenerates.
    Invariant subspaces do not change under these shears.
    """
    A = as_hermitian(A, name='A')
    B = as_hermitian(B, name='B')
    try:
        return curve_decomposability_test(A, B, k, Gamma, tol_resid=tol_resid, **kwargs)
    except CoordinateChangeRequired as e:
        reason = str(e)
        logger.info(f"coordinate change needed: {reason}")

    for c in _shear_transforms(shears):
        A_c, B_c = transform_pencil(A, B, c)
        try:
            result = curve_decomposability_test(A_c, B_c, k, transform_polynomial(Gamma, c),
                                                tol_resid=tol_resid, **kwargs)
        except (CoordinateChangeRequired, SingularMatrixError):
            continue
        notes = result.notes + (f"{reason}; used the transform c = {c.tolist()}",)
        diagnostics = dict(result.diagnostics, transform=c.tolist())
        if result.basis.shape[1] == 0:
            return replace(result, notes=notes, diagnostics=diagnostics)
        residual = max(verify_invariant_subspace(A, result.basis), verify_invariant_subspace(B, result.basis))
        verdict = result.verdict
        if verdict == YES and residual > tol_resid * max(spectral_norm(B), spectral_norm(A)):
            verdict = NO
            notes += (f"subspace not invariant for the original pair (residual {residual:.3e})",)
        return replace(result, verdict=verdict, invariance_residual=residual, notes=notes, diagnostics=diagnostics)
    raise CoordinateChangeRequired(f"{reason}; no shear in {list(shears)} produced nondegenerate axes")


def restricted_polynomial(A, B, basis):
    """Determining polynomial of the pair compressed to span(basis)."""
    return pencil_polynomial(compress(np.asarray(A), basis), compress(np.asarray(B), basis))


def circle_subspace_test(A1, A2, tol_resid=TOL_RESID, tol_contain=TOL_CONTAIN):
    """
    Unit circle criterion: the +1 and -1 eigenvectors of A1 should span a
    common reducing subspace L of dimension 2n on which the pair is a pair
    of anticommuting involutions, and the circle should appear with
    multiplicity n in the spectra of (A1, A2) and (A1^{-1}, A2).
    """
    A1 = as_hermitian(A1, name='A1')
    A2 = as_hermitian(A2, name='A2')
    check_same_dimension(A1, A2)
    eig = eig_hermitian(A1)
    tol = CLUSTER_TOL * max(eig.norm, 1.0)
    plus = eig.indices_near(1.0, tol)
    minus = eig.indices_near(-1.0, tol)
    notes = []
    circle = circle_polynomial()
    multiplicity = curve_multiplicity(pencil_polynomial(A1, A2), circle, tol_contain)
    inverse_multiplicity = None
    if not is_singular(A1):
        inverse_multiplicity = curve_multiplicity(pencil_polynomial(inverse(A1), A2), circle, tol_contain)

    indices = np.concatenate([plus, minus])
    basis = eig.basis(indices)
    residual = verify_invariant_subspace(A2, basis)
    relations = bc2_relations(compress(A1, basis), compress(A2, basis)) if indices.size else (np.inf,) * 3
    n = int(plus.size)
    diagnostics = {
        'circle_multiplicity': multiplicity,
        'inverse_circle_multiplicity': inverse_multiplicity,
        'plus_multiplicity': n,
        'minus_multiplicity': int(minus.size),
        'bc2_residuals': list(relations),
    }

    ok = n > 0 and minus.size == n
    if not ok:
        notes.append(f"eigenvalues +1 and -1 of A1 have multiplicities {n} and {minus.size}")
    if multiplicity < n or (inverse_multiplicity is not None and inverse_multiplicity < n):
        ok = False
        notes.append("the circle does not appear with full multiplicity")
    if residual > tol_resid * max(spectral_norm(A2), 1e-300):
        ok = False
        notes.append(f"span of the +-1 eigenvectors is not reducing (residual {residual:.3e})")
    if max(relations) > 1e-9:
        ok = False
        notes.append("restrictions do not satisfy the BC2 relations")
    return DecomposabilityReport(verdict=YES if ok else NO, k=int(indices.size), basis=basis,
                                 invariance_residual=residual, genericity=True,
                                 notes=tuple(notes), diagnostics=diagnostics)
