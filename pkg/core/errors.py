"""
Error types for PencilSpec
Every failure raised by the numerical core derives from PencilSpecError and
carries the process exit code the command-line front-end reports for it.
"""


class PencilSpecError(Exception):
    """Base class for all PencilSpec errors."""

    exit_code = 70


class UsageError(PencilSpecError):
    """Bad command-line usage or unparseable input."""

    exit_code = 64


class DataFormatError(PencilSpecError):
    """Input file parsed but a field is missing or invalid."""

    exit_code = 65

    def __init__(self, message, path=None, field=None):
        self.path = path
        self.field = field
        location = []
        if path is not None:
            location.append(str(path))
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{': '.join(location)}: {message}"
        super().__init__(message)


class MalformedInputError(UsageError):
    """Input file is not valid JSON at all."""


class DimensionMismatchError(PencilSpecError):
    """Operands have incompatible shapes."""

    exit_code = 65


class NotHermitianError(PencilSpecError):
    """Matrix is not self-adjoint within tolerance."""

    exit_code = 65

    def __init__(self, message, asymmetry=None):
        self.asymmetry = asymmetry
        super().__init__(message)


class InvalidParameterError(PencilSpecError):
    """A numeric parameter is outside its admissible range."""

    exit_code = 64


class SingularMatrixError(PencilSpecError):
    """Matrix is numerically singular."""


class ConvergenceError(PencilSpecError):
    """Iterative method did not converge."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class NumericalFailureError(PencilSpecError):
    """A built-in consistency check failed."""


class SpectralGapError(PencilSpecError):
    """An eigenvalue is not isolated enough for the requested operation."""

    def __init__(self, message, gap=None):
        self.gap = gap
        super().__init__(message)


class EmptyIntersectionError(PencilSpecError):
    """A sampled set inside a polydisk came out empty."""

    def __init__(self, message, which=None):
        self.which = which
        super().__init__(message)


class CoordinateChangeRequired(PencilSpecError):
    """Axis intersections degenerate; retry in sheared coordinates."""
