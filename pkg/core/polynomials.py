"""
Bivariate polynomials, lines and polydisks for PencilSpec.

Coefficients are stored densely: coeffs[i, j] multiplies x**i * y**j.
Products use scipy.signal.convolve2d and evaluation uses numpy.polynomial.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.signal import convolve2d

from .errors import InvalidParameterError

ZERO_TOL = 1e-12


def _padded(array, degree):
    out = np.zeros((degree + 1, degree + 1), dtype=array.dtype)
    rows = min(array.shape[0], degree + 1)
    cols = min(array.shape[1], degree + 1)
    out[:rows, :cols] = array[:rows, :cols]
    return out


@dataclass(frozen=True, eq=False)
class BivariatePolynomial:
    """Real polynomial P(x, y) of total degree at most `degree`."""

    coeffs: np.ndarray

    def __post_init__(self):
        array = np.asarray(self.coeffs)
        if np.iscomplexobj(array):
            if np.max(np.abs(array.imag), initial=0.0) > 1e-9 * max(np.max(np.abs(array)), 1.0):
                raise InvalidParameterError("polynomial coefficients must be real")
            array = array.real
        array = np.array(array, dtype=float)
        if array.ndim != 2:
            raise InvalidParameterError(f"coefficient array must be 2-D, got shape {array.shape}")
        degree = max(array.shape) - 1
        array = _padded(array, degree)
        i, j = np.indices(array.shape)
        array[i + j > degree] = 0.0
        array.setflags(write=False)
        object.__setattr__(self, 'coeffs', array)

    @classmethod
    def from_terms(cls, terms, degree=None):
        """Build from (i, j, c) triples."""
        terms = list(terms)
        if degree is None:
            degree = max((i + j for i, j, _ in terms), default=0)
        array = np.zeros((degree + 1, degree + 1))
        for i, j, c in terms:
            if i < 0 or j < 0 or i + j > degree:
                raise InvalidParameterError(f"term x^{i} y^{j} exceeds degree {degree}")
            array[i, j] += c
        return cls(array)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def total_degree(self, tol=0.0):
        """Largest i+j whose coefficient exceeds tol * max|coeff|; -1 for zero."""
        scale = np.max(np.abs(self.coeffs))
        if scale == 0.0:
            return -1
        i, j = np.nonzero(np.abs(self.coeffs) > tol * scale)
        return int(np.max(i + j))

    def trimmed(self, tol=0.0):
        degree = max(self.total_degree(tol), 0)
        return BivariatePolynomial(self.coeffs[:degree + 1, :degree + 1])

    def terms(self):
        i, j = np.nonzero(self.coeffs)
        return [(int(a), int(b), float(self.coeffs[a, b])) for a, b in zip(i, j)]

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    @property
    def constant(self):
        return float(self.coeffs[0, 0])

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        return npoly.polyval2d(x, y, self.coeffs)

    def abs_scale(self, x, y):
        """Sum of |c_ij||x|^i|y|^j, the natural scale of a value P(x, y)."""
        return npoly.polyval2d(np.abs(x), np.abs(y), np.abs(self.coeffs))

    def normalized(self):
        """Rescale so the constant term is -1."""
        c0 = self.constant
        if abs(c0) <= ZERO_TOL * max(self.norm, 1.0):
            raise InvalidParameterError("polynomial has vanishing constant term; cannot normalize to -1")
        return BivariatePolynomial(self.coeffs / -c0)

    def partial(self, dx=0, dy=0):
        array = np.array(self.coeffs)
        if dx:
            array = npoly.polyder(array, m=dx, axis=0)
        if dy:
            array = npoly.polyder(array, m=dy, axis=1)
        return BivariatePolynomial(array)

    def scaled(self, sx, sy):
        """The polynomial (x, y) -> P(sx x, sy y)."""
        n = self.degree + 1
        return BivariatePolynomial(self.coeffs * np.outer(float(sx) ** np.arange(n), float(sy) ** np.arange(n)))

    def x_slice(self, y):
        """Coefficients (ascending) of x -> P(x, y)."""
        powers = np.asarray(y)[..., None] ** np.arange(self.degree + 1)
        return powers @ self.coeffs.T

    def y_slice(self, x):
        """Coefficients (ascending) of y -> P(x, y)."""
        powers = np.asarray(x)[..., None] ** np.arange(self.degree + 1)
        return powers @ self.coeffs

    def __mul__(self, other):
        if isinstance(other, BivariatePolynomial):
            return BivariatePolynomial(convolve2d(self.coeffs, other.coeffs))
        return BivariatePolynomial(self.coeffs * float(other))

    __rmul__ = __mul__

    def __add__(self, other):
        degree = max(self.degree, other.degree)
        return BivariatePolynomial(_padded(self.coeffs, degree) + _padded(other.coeffs, degree))

    def __sub__(self, other):
        return self + (-1.0) * other

    def __pow__(self, exponent):
        result = BivariatePolynomial(np.ones((1, 1)))
        for _ in range(int(exponent)):
            result = result * self
        return result

    def __repr__(self):
        return f"BivariatePolynomial(degree={self.degree}, terms={len(self.terms())})"


@dataclass(frozen=True)
class Line:
    """The affine line {alpha x + beta y = 1}."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, 'alpha', float(self.alpha))
        object.__setattr__(self, 'beta', float(self.beta))
        if self.alpha == 0.0 and self.beta == 0.0:
            raise InvalidParameterError("line needs (alpha, beta) != (0, 0)")

    @property
    def norm(self):
        return float(np.hypot(self.alpha, self.beta))

    @property
    def base_point(self):
        """Point of the line nearest the origin."""
        n2 = self.alpha ** 2 + self.beta ** 2
        return self.alpha / n2, self.beta / n2

    @property
    def direction(self):
        return -self.beta / self.norm, self.alpha / self.norm

    @property
    def normal(self):
        return self.alpha / self.norm, self.beta / self.norm

    def polynomial(self):
        return BivariatePolynomial(np.array([[-1.0, self.beta], [self.alpha, 0.0]]))

    def __str__(self):
        return f"{{{self.alpha:.6g} x + {self.beta:.6g} y = 1}}"


@dataclass(frozen=True)
class PolyDisk:
    """Product of two complex disks of common radius around (x0, y0)."""

    center: tuple
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidParameterError(f"polydisk radius must be positive, got {self.radius}")
        x0, y0 = self.center
        object.__setattr__(self, 'center', (complex(x0), complex(y0)))
        object.__setattr__(self, 'radius', float(self.radius))

    def contains(self, x, y):
        x0, y0 = self.center
        limit = self.radius * (1 + 1e-12)
        return (np.abs(np.asarray(x) - x0) <= limit) & (np.abs(np.asarray(y) - y0) <= limit)

    def enlarged(self, factor):
        return PolyDisk(self.center, self.radius * factor)


def _linear_powers(constant, du, dt, degree):
    form = np.array([[constant, dt], [du, 0.0]])
    powers = [np.ones((1, 1))]
    for _ in range(degree):
        powers.append(convolve2d(powers[-1], form))
    return powers


def substitute_affine(P, x_map, y_map):
    """
    Compose P with an affine map of new variables (u, t).

    x_map = (x0, xu, xt) means x = x0 + xu u + xt t; likewise y_map.
    The result is a BivariatePolynomial in (u, t).
    """
    d = P.degree
    X = _linear_powers(*x_map, d)
    Y = _linear_powers(*y_map, d)
    out = np.zeros((d + 1, d + 1))
    for i in range(d + 1):
        for j in range(d + 1 - i):
            c = P.coeffs[i, j]
            if c != 0.0:
                out += c * _padded(convolve2d(X[i], Y[j]), d)
    return BivariatePolynomial(out)


def line_coordinates(P, line):
    """
    P in coordinates (u, t) adapted to the line: (x, y) = p0 + u n + t tau,
    with p0 the point nearest the origin, n the unit normal and tau the unit
    direction. The line is {u = 0}.
    """
    x0, y0 = line.base_point
    nx, ny = line.normal
    tx, ty = line.direction
    return substitute_affine(P, (x0, nx, tx), (y0, ny, ty))


def companion_roots(rows, tol=ZERO_TOL):
    """
    Roots of many univariate polynomials (ascending coefficient rows).

    Rows whose leading coefficient is healthy go through one batched
    companion-matrix eigenvalue call; the rest are trimmed and solved one at
    a time. Returns (roots, vanishing) where vanishing flags rows that are
    identically zero.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=complex))
    count, width = rows.shape
    roots = [np.empty(0, dtype=complex)] * count
    vanishing = np.zeros(count, dtype=bool)
    if width < 2:
        vanishing[:] = np.all(rows == 0, axis=1)
        return roots, vanishing

    scale = np.max(np.abs(rows), axis=1)
    lead = rows[:, -1]
    healthy = (np.abs(lead) > tol * scale) & (scale > 0)
    d = width - 1

    if np.any(healthy):
        monic = rows[healthy, :-1] / lead[healthy, None]
        companion = np.zeros((monic.shape[0], d, d), dtype=complex)
        if d > 1:
            companion[:, np.arange(1, d), np.arange(d - 1)] = 1.0
        companion[:, :, -1] = -monic
        eigs = np.linalg.eigvals(companion)
        for slot, idx in enumerate(np.flatnonzero(healthy)):
            roots[idx] = eigs[slot]

    for idx in np.flatnonzero(~healthy):
        row = rows[idx]
        if scale[idx] == 0.0:
            vanishing[idx] = True
            continue
        keep = np.flatnonzero(np.abs(row) > tol * scale[idx])
        if keep.size == 0 or keep[-1] == 0:
            # Nonzero constant only: no roots
            continue
        roots[idx] = npoly.polyroots(row[:keep[-1] + 1])
    return roots, vanishing


def _division_matrix(G, dq, d):
    basis = [(a, b) for a in range(dq + 1) for b in range(dq + 1 - a)]
    columns = []
    for a, b in basis:
        shifted = np.zeros((d + 1, d + 1))
        rows, cols = G.coeffs.shape
        shifted[a:a + rows, b:b + cols] = G.coeffs[:d + 1 - a, :d + 1 - b]
        columns.append(shifted.ravel())
    return np.stack(columns, axis=1), basis


def divide(P, G, tol=ZERO_TOL):
    """
    Least-squares quotient Q of P by G and the relative residual
    ||P - G Q|| / ||P||.
    """
    P = P.trimmed(tol)
    G = G.trimmed(tol)
    d = P.total_degree(tol)
    dg = G.total_degree(tol)
    if dg < 0:
        raise InvalidParameterError("cannot divide by the zero polynomial")
    if d < dg:
        return BivariatePolynomial(np.zeros((1, 1))), 1.0
    dq = d - dg
    matrix, basis = _division_matrix(G, dq, d)
    target = _padded(P.coeffs, d).ravel()
    solution, *_ = np.linalg.lstsq(matrix, target, rcond=None)
    quotient = np.zeros((dq + 1, dq + 1))
    for (a, b), value in zip(basis, solution):
        quotient[a, b] = value
    residual = np.linalg.norm(target - matrix @ solution) / max(np.linalg.norm(target), np.finfo(float).tiny)
    return BivariatePolynomial(quotient), float(residual)


def curve_multiplicity(P, G, tol=1e-7):
    """Largest m such that G**m divides P numerically."""
    remainder = P
    multiplicity = 0
    dg = G.total_degree(ZERO_TOL)
    if dg <= 0:
        raise InvalidParameterError("curve factor must have positive degree")
    while remainder.total_degree(ZERO_TOL) >= dg:
        quotient, residual = divide(remainder, G)
        if residual > tol:
            break
        multiplicity += 1
        remainder = quotient
    return multiplicity


def circle_polynomial(radius=1.0):
    """x**2 + y**2 - radius**2."""
    return BivariatePolynomial.from_terms([(0, 0, -radius ** 2), (2, 0, 1.0), (0, 2, 1.0)], degree=2)
