"""Exception types raised across the package."""


class LindformError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(LindformError, ValueError):
    """Input with the wrong shape, dimension, or value range."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InconsistentBasisError(LindformError, ValueError):
    """A generator basis is not orthonormal, Hermitian, or traceless."""


class SingularMatrixError(LindformError, ArithmeticError):
    pass


class RankDeficiencyError(LindformError, ArithmeticError):
    """Matrix handed to the pseudo-inverse lacks full column rank."""

    def __init__(self, message, ratio):
        super().__init__(message)
        self.ratio = ratio


class ConvergenceError(LindformError, RuntimeError):
    pass


class InvalidDissipatorError(LindformError, ValueError):
    """Supermatrix is not trace-annihilating or not Hermiticity-preserving."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NonHermiticityPreservingError(LindformError, ValueError):
    pass


class NonGKLSRepresentableError(LindformError, ValueError):
    """The augmented linear system for the Kossakowski vector is inconsistent."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class TensorConstructionError(LindformError, RuntimeError):
    pass


class InvalidDocumentError(LindformError, ValueError):
    """Malformed Liouvillian JSON document."""
