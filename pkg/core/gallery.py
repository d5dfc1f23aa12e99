"""
Example pairs and seeded generators.

Random draws use numpy's PCG64 bit generator seeded with the caller's
integer seed; the order of draws is fixed, so a seed determines the
output bit for bit:
  decomposable(N, k): per attempt, N magnitudes uniform on [0.5, 2), N signs,
  then a k x k and an (N-k) x (N-k) Gaussian Hermitian block;
  perturbed(N, k, eps): the decomposable draws, then the k x (N-k) complex
  Gaussian off-diagonal block of E.
"""

from dataclasses import dataclass
from itertools import combinations
from math import prod

import numpy as np

from utils.logger import get_logger

from .errors import InvalidParameterError, NumericalFailureError
from .matrices import spectral_norm
from .pencil import pencil_polynomial
from .polynomials import BivariatePolynomial

logger = get_logger('gallery')

KINDS = ('intro_example', 'circle_pair', 'decomposable', 'perturbed')
MAX_DIMENSION = 12
MAX_TRIES = 1000
ENTRY_RANGE = (0.5, 2.0)
ENTRY_GAP = 0.05
PRODUCT_GAP = 1e-4
BLOCK_EIGENVALUE_FLOOR = 0.05
UNITARY_TOL = 1e-10
BC2_TOL = 1e-9


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def intro_example():
    """The 3x3 pair whose spectrum contains a line without a common eigenvector."""
    A1 = np.diag([1.0, 5.0, 0.0])
    A2 = np.array([[1.0, 2.0, 1.0], [2.0, 7.0, 1.0], [1.0, 1.0, 0.5]])
    return A1, A2


def intro_factors():
    """The two components of the spectrum of intro_example, each with constant term -1."""
    line = BivariatePolynomial.from_terms([(1, 0, 1.0), (0, 1, 1.0), (0, 0, -1.0)])
    quadratic = BivariatePolynomial.from_terms(
        [(1, 1, 5.0), (0, 2, -5.0), (0, 1, -15.0), (1, 0, -10.0), (0, 0, 2.0)]
    )
    return line, quadratic.normalized()


def random_unitary(n, rng):
    """Haar unitary from the QR factorization of a complex Gaussian matrix."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def random_hermitian(n, rng):
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    return (G + G.conj().T) / 2.0


def circle_pair(n, D):
    """C1 = diag(I, -I) and C2 = [[0, D], [D*, 0]]: anticommuting involutions."""
    D = np.asarray(D, dtype=complex)
    if D.shape != (n, n):
        raise InvalidParameterError(f"D must be {n}x{n}, got shape {D.shape}")
    if np.linalg.norm(D.conj().T @ D - np.eye(n), 2) > UNITARY_TOL:
        raise InvalidParameterError("D is not unitary")
    zero = np.zeros((n, n))
    C1 = np.block([[np.eye(n), zero], [zero, -np.eye(n)]]).astype(complex)
    C2 = np.block([[zero, D], [D.conj().T, zero]])
    return C1, C2


def bc2_relations(C1, C2):
    """Residuals of s^2 = 1, t^2 = 1 and (st)^4 = 1."""
    C1 = np.asarray(C1, dtype=complex)
    C2 = np.asarray(C2, dtype=complex)
    identity = np.eye(C1.shape[0])
    return (
        spectral_norm(C1 @ C1 - identity),
        spectral_norm(C2 @ C2 - identity),
        spectral_norm(np.linalg.matrix_power(C1 @ C2, 4) - identity),
    )


@dataclass(frozen=True)
class BC2Check:
    ok: bool
    residuals: tuple

    def __bool__(self):
        return self.ok


def bc2_check(C1, C2, tol=BC2_TOL):
    """Whether (C1, C2) represents the Coxeter group BC2."""
    if np.shape(C1) != np.shape(C2):
        raise InvalidParameterError(f"shapes differ: {np.shape(C1)} and {np.shape(C2)}")
    residuals = bc2_relations(C1, C2)
    return BC2Check(ok=max(residuals) <= tol, residuals=residuals)


@dataclass(frozen=True, eq=False)
class DecomposablePair:
    """A pair with the common invariant subspace span(basis); gamma is the block's curve."""

    A: np.ndarray
    B: np.ndarray
    basis: np.ndarray
    gamma: BivariatePolynomial
    E: np.ndarray = None

    def __iter__(self):
        return iter((self.A, self.B, self.basis))


def _separated(entries, k):
    magnitudes = np.abs(entries)
    for i, j in combinations(range(len(entries)), 2):
        if abs(entries[i] - entries[j]) < ENTRY_GAP * max(magnitudes[i], magnitudes[j]):
            return False
    target = prod(entries[:k])
    tolerance = PRODUCT_GAP * (1.0 + abs(target))
    return all(
        abs(prod(entries[i] for i in subset) - target) > tolerance
        for subset in combinations(range(len(entries)), k)
        if subset != tuple(range(k))
    )


def _check_dimensions(N, k):
    if not 1 <= k < N <= MAX_DIMENSION:
        raise InvalidParameterError(f"need 1 <= k < N <= {MAX_DIMENSION}, got N={N}, k={k}")


def _draw_decomposable(N, k, rng):
    low, high = ENTRY_RANGE
    for attempt in range(1, MAX_TRIES + 1):
        entries = rng.uniform(low, high, N) * rng.choice([-1.0, 1.0], N)
        block = random_hermitian(k, rng)
        rest = random_hermitian(N - k, rng)
        if not _separated(entries, k):
            continue
        if np.min(np.abs(np.linalg.eigvalsh(block))) <= BLOCK_EIGENVALUE_FLOOR:
            continue
        logger.debug(f"decomposable pair N={N}, k={k} accepted after {attempt} attempts")
        A = np.diag(entries).astype(complex)
        B = np.zeros((N, N), dtype=complex)
        B[:k, :k] = block
        B[k:, k:] = rest
        basis = np.eye(N, dtype=complex)[:, :k]
        gamma = pencil_polynomial(np.diag(entries[:k]), block)
        return DecomposablePair(A=A, B=B, basis=basis, gamma=gamma)
    raise NumericalFailureError(f"no generic decomposable pair after {MAX_TRIES} attempts (N={N}, k={k})")


def random_decomposable_pair(N, k, seed):
    """Diagonal A and block-diagonal B sharing the invariant subspace span(e_1, ..., e_k)."""
    _check_dimensions(N, k)
    return _draw_decomposable(N, k, make_rng(seed))


def random_perturbed_pair(N, k, seed, eps):
    """random_decomposable_pair with B + eps E, E Hermitian off-block with ||E|| = 1."""
    _check_dimensions(N, k)
    rng = make_rng(seed)
    pair = _draw_decomposable(N, k, rng)
    X = rng.standard_normal((k, N - k)) + 1j * rng.standard_normal((k, N - k))
    E = np.zeros((N, N), dtype=complex)
    E[:k, k:] = X
    E[k:, :k] = X.conj().T
    E /= spectral_norm(E)
    return DecomposablePair(A=pair.A, B=pair.B + eps * E, basis=pair.basis, gamma=pair.gamma, E=E)


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a gallery pair; the seed fixes every random draw."""

    kind: str
    n: int = 3
    k: int = 1
    seed: int = 0
    eps: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown gallery kind {self.kind!r}; expected one of {', '.join(KINDS)}")

    def build(self):
        """Returns (A, B, gamma or None, basis or None)."""
        if self.kind == 'intro_example':
            A, B = intro_example()
            return A, B, intro_factors()[1], None
        if self.kind == 'circle_pair':
            if self.n < 1:
                raise InvalidParameterError(f"circle_pair needs n >= 1, got {self.n}")
            C1, C2 = circle_pair(self.n, random_unitary(self.n, make_rng(self.seed)))
            return C1, C2, None, None
        if self.kind == 'decomposable':
            pair = random_decomposable_pair(self.n, self.k, self.seed)
        else:
            pair = random_perturbed_pair(self.n, self.k, self.seed, self.eps)
        return pair.A, pair.B, pair.gamma, pair.basis
