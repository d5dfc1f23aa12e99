"""
Dense complex linear algebra for PencilSpec
Hermitian validation, cyclic Jacobi eigensolver, LU determinants and
inverses, commutator norms and the identity-shift perturbation family.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg as la

from utils.logger import get_logger

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidParameterError,
    NotHermitianError,
    SingularMatrixError,
)

logger = get_logger('matrices')

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
CLUSTER_GAP = 1e-9
PIVOT_UNDERFLOW = 1e-300
SINGULAR_TOL = 1e-12


def _frozen(array):
    array.setflags(write=False)
    return array


def as_matrix(M, name='matrix'):
    """Validate a square finite matrix and return a read-only complex copy."""
    try:
        array = np.array(M, dtype=complex)
    except (TypeError, ValueError) as e:
        raise DimensionMismatchError(f"{name} is not numeric: {e}") from e
    if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be a non-empty square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        bad = tuple(int(i) for i in np.argwhere(~np.isfinite(array))[0])
        raise InvalidParameterError(f"{name} has a non-finite entry at {bad}")
    return _frozen(array)


def as_hermitian(M, tol=HERMITIAN_TOL, name='matrix'):
    """Validate self-adjointness and return the exact Hermitian part (read-only)."""
    array = np.array(as_matrix(M, name))
    scale = np.max(np.abs(array))
    asymmetry = np.max(np.abs(array - array.conj().T))
    if asymmetry > tol * scale:
        i, j = np.unravel_index(np.argmax(np.abs(array - array.conj().T)), array.shape)
        raise NotHermitianError(
            f"{name} is not Hermitian: entries ({i},{j}) and ({j},{i}) differ by {asymmetry:.3e}",
            asymmetry=float(asymmetry),
        )
    return _frozen((array + array.conj().T) / 2)


def check_same_dimension(*matrices):
    """Raise unless all matrices share one dimension; return it."""
    sizes = {m.shape[0] for m in matrices}
    if len(sizes) != 1:
        raise DimensionMismatchError(f"matrices have different dimensions: {sorted(sizes)}")
    return sizes.pop()


def spectral_norm(M):
    """Largest singular value."""
    return float(np.linalg.norm(M, 2))


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    clusters: tuple
    sweeps: int = 0
    off_norm: float = 0.0

    @property
    def n(self):
        return self.eigenvalues.shape[0]

    @property
    def norm(self):
        return float(np.max(np.abs(self.eigenvalues))) if self.n else 0.0

    def indices_near(self, value, tol):
        """Indices of eigenvalues within tol of value."""
        return np.flatnonzero(np.abs(self.eigenvalues - value) <= tol)

    def basis(self, indices):
        return self.vectors[:, list(indices)]

    def projection(self, indices):
        """Orthogonal projection onto the span of the selected eigenvectors."""
        V = self.basis(indices)
        return V @ V.conj().T

    def spectral_function(self, values):
        """Matrix V diag(values) V* for per-eigenvalue weights."""
        return (self.vectors * np.asarray(values)) @ self.vectors.conj().T

    def reconstruct(self):
        return self.spectral_function(self.eigenvalues)


def _off_norm(A):
    return np.linalg.norm(A - np.diag(np.diag(A)))


def _clusters(eigenvalues, gap):
    groups = []
    current = [0]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i - 1] - eigenvalues[i] < gap:
            current.append(i)
        else:
            groups.append(tuple(current))
            current = [i]
    groups.append(tuple(current))
    return tuple(groups)


def eig_hermitian(A, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """
    Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation first removes the phase of a_pq with diag(1, e^{-i phi})
    and then applies a real Givens rotation, so the accumulated transform
    stays unitary. Sweeps stop once the off-diagonal Frobenius mass falls
    below tol * ||A||_F.
    """
    H = np.array(as_hermitian(A, name='A'))
    n = H.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(H)
    target = tol * scale

    sweeps = 0
    off = _off_norm(H)
    while off > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})",
                residual=float(off),
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = H[p, q]
                magnitude = abs(h)
                if magnitude <= 1e-300 or magnitude <= 1e-18 * scale:
                    continue
                phase = np.exp(-1j * np.angle(h))
                theta = 0.5 * np.arctan2(2.0 * magnitude, H[q, q].real - H[p, p].real)
                c, s = np.cos(theta), np.sin(theta)
                rot = np.array([[c, s], [-s * phase, c * phase]])

                idx = [p, q]
                H[:, idx] = H[:, idx] @ rot
                H[idx, :] = rot.conj().T @ H[idx, :]
                V[:, idx] = V[:, idx] @ rot
                H[p, q] = H[q, p] = 0.0
                H[p, p] = H[p, p].real
                H[q, q] = H[q, q].real
        off = _off_norm(H)

    eigenvalues = np.diag(H).real.copy()
    order = np.argsort(-eigenvalues, kind='stable')
    eigenvalues = eigenvalues[order]
    V = V[:, order]

    gap = CLUSTER_GAP * max(np.max(np.abs(eigenvalues)), np.finfo(float).tiny)
    clusters = _clusters(eigenvalues, gap)
    for group in clusters:
        if len(group) > 1:
            Q, _ = np.linalg.qr(V[:, list(group)])
            V[:, list(group)] = Q

    logger.debug(f"Jacobi converged: n={n}, sweeps={sweeps}, off={off:.2e}")
    return EigenDecomposition(
        eigenvalues=_frozen(eigenvalues),
        vectors=_frozen(V),
        clusters=clusters,
        sweeps=sweeps,
        off_norm=float(off),
    )


def det(M):
    """Determinant by LU with partial pivoting; exact zero on pivot underflow."""
    array = as_matrix(M)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', la.LinAlgWarning)
        lu, piv = la.lu_factor(array, check_finite=False)
    pivots = np.diag(lu)
    if np.any(np.abs(pivots) < PIVOT_UNDERFLOW):
        return 0j
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(pivots))


def is_singular(M, tol=SINGULAR_TOL):
    """True when |det M| <= tol * ||M||^n."""
    array = as_matrix(M)
    norm = spectral_norm(array)
    if norm == 0.0:
        return True
    # Scale first so ||M||^n cannot overflow
    return abs(det(array / norm)) <= tol


def inverse(M, tol=SINGULAR_TOL):
    """Inverse via LU; Hermitian input yields a Hermitian inverse."""
    array = as_matrix(M)
    if is_singular(array, tol):
        raise SingularMatrixError(
            f"matrix is numerically singular (|det| <= {tol:g} * ||M||^{array.shape[0]})"
        )
    lu_piv = la.lu_factor(array, check_finite=False)
    result = la.lu_solve(lu_piv, np.eye(array.shape[0], dtype=complex), check_finite=False)
    scale = np.max(np.abs(array))
    if np.max(np.abs(array - array.conj().T)) <= HERMITIAN_TOL * scale:
        result = (result + result.conj().T) / 2
    return _frozen(result)


def commutator_norm(A, B):
    """Spectral norm of AB - BA via the Hermitian matrix i(AB - BA)."""
    A = as_hermitian(A, name='A')
    B = as_hermitian(B, name='B')
    check_same_dimension(A, B)
    C = 1j * (A @ B - B @ A)
    C = (C + C.conj().T) / 2
    decomposition = eig_hermitian(C)
    return float(np.max(np.abs(decomposition.eigenvalues)))


def perturb(A, eps, lam):
    """The family A(eps, lam) = (1 + eps) A - lam eps I."""
    if eps == -1:
        raise InvalidParameterError("perturbation parameter eps must differ from -1")
    A = as_hermitian(A, name='A')
    n = A.shape[0]
    return _frozen((1 + eps) * np.array(A) - lam * eps * np.eye(n))


def compress(M, basis):
    """Matrix of M restricted to span(basis) in that basis: basis* M basis."""
    return basis.conj().T @ M @ basis


def orthogonal_complement(basis):
    """Orthonormal basis of the orthogonal complement of span(basis)."""
    n, k = basis.shape
    if k == 0:
        return np.eye(n, dtype=complex)
    Q, _ = np.linalg.qr(basis, mode='complete')
    return Q[:, k:]
