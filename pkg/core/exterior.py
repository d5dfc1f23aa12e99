"""
Exterior powers (compound matrices) and spectral multisets.

The basis of the k-th exterior power is e_I = e_{i1} ^ ... ^ e_{ik} over
strictly increasing index tuples I in lexicographic order; entry (I, J) of
the compound matrix is the minor det A[I, J].
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import prod

import numpy as np

from utils.logger import get_logger

from .errors import InvalidParameterError, SingularMatrixError
from .matrices import as_hermitian, as_matrix, det, eig_hermitian, inverse, is_singular

logger = get_logger('exterior')

MINOR_BLOCK = 64
EIGENVALUE_MATCH = 1e-9
GAP_TOL = 1e-6


@dataclass(frozen=True)
class ExteriorIndex:
    """Lexicographic basis of the k-th exterior power of C^n (0-based subsets)."""

    n: int
    k: int
    subsets: tuple = field(repr=False)

    @classmethod
    def build(cls, n, k):
        if not 0 <= k <= n:
            raise InvalidParameterError(f"exterior order k={k} outside 0..{n}")
        return cls(n, k, tuple(combinations(range(n), k)))

    def __len__(self):
        return len(self.subsets)

    def labels(self):
        """Subset labels with 1-based indices, e.g. '12', '13', '23'."""
        sep = '' if self.n <= 9 else ','
        return [sep.join(str(i + 1) for i in subset) for subset in self.subsets]

    def position(self, subset):
        return self.subsets.index(tuple(sorted(subset)))


def exterior_power(A, k):
    """The compound matrix of order k (size C(n, k))."""
    A = as_matrix(A, name='A')
    n = A.shape[0]
    if not 1 <= k <= n:
        raise InvalidParameterError(f"exterior order k={k} outside 1..{n}")
    index = ExteriorIndex.build(n, k)
    rows = np.array(index.subsets)
    m = len(rows)
    out = np.empty((m, m), dtype=complex)
    # Minors are taken in row blocks to bound memory
    for start in range(0, m, MINOR_BLOCK):
        block = rows[start:start + MINOR_BLOCK]
        minors = A[block[:, None, :, None], rows[None, :, None, :]]
        out[start:start + MINOR_BLOCK] = np.linalg.det(minors)
    return out


def complementary_power(A, k):
    """det(A) times the k-th exterior power of A^{-1}: the action of the (n-k)-th power on k-vectors."""
    A = as_hermitian(A, name='A')
    n = A.shape[0]
    if not 1 <= k <= n - 1:
        raise InvalidParameterError(f"complementary power needs 1 <= k <= {n - 1}, got {k}")
    if is_singular(A):
        raise SingularMatrixError("complementary power needs an invertible matrix")
    return det(A) * exterior_power(inverse(A), k)


def complement_operator(A, k):
    """complementary_power extended to k = n, where it is the 1x1 identity."""
    A = as_hermitian(A, name='A')
    if k == A.shape[0]:
        return np.ones((1, 1), dtype=complex)
    return complementary_power(A, k)


@dataclass(frozen=True)
class SpectralMultiset:
    """Multiset of eigenvalues {lambda_1, ..., lambda_k} and its product."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(sorted(float(v) for v in self.values)))

    @property
    def k(self):
        return len(self.values)

    @property
    def product(self):
        return prod(self.values)


@dataclass(frozen=True)
class GenericityResult:
    generic: bool
    product: float
    collisions: tuple
    gap_tol: float

    def __bool__(self):
        return self.generic


def subset_products(eigenvalues, k):
    """Products over all k-subsets of indices, paired with the subsets."""
    return [(subset, prod(eigenvalues[i] for i in subset)) for subset in combinations(range(len(eigenvalues)), k)]


def is_generic_multiset(A, L, gap_tol=None, match_tol=EIGENVALUE_MATCH, decomposition=None):
    """
    True iff exactly one k-subset of the spectrum (with multiplicity) has
    product within gap_tol of prod(L).
    """
    A = as_hermitian(A, name='A')
    if not isinstance(L, SpectralMultiset):
        L = SpectralMultiset(tuple(L))
    eig = decomposition or eig_hermitian(A)
    eigenvalues = eig.eigenvalues
    tolerance = match_tol * max(eig.norm, 1.0)

    used = set()
    for value in L.values:
        candidates = [i for i in np.argsort(np.abs(eigenvalues - value)) if i not in used]
        if not candidates or abs(eigenvalues[candidates[0]] - value) > tolerance:
            raise InvalidParameterError(f"{value:.12g} is not an eigenvalue of A (or exceeds its multiplicity)")
        used.add(int(candidates[0]))

    product = L.product
    if gap_tol is None:
        gap_tol = GAP_TOL * (1.0 + abs(product))
    collisions = tuple(
        (tuple(int(i) for i in subset), float(p))
        for subset, p in subset_products(eigenvalues, L.k)
        if abs(p - product) <= gap_tol
    )
    generic = len(collisions) == 1
    if not generic:
        logger.info(f"multiset {L.values} is not generic: {len(collisions)} subsets share product {product:.6g}")
    return GenericityResult(generic=generic, product=product, collisions=collisions, gap_tol=gap_tol)
