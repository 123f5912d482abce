"""
Exception hierarchy for the Gaussian state toolkit
"""


class GaussianStateError(Exception):
    """Base class for every error raised by this package"""


class DomainError(GaussianStateError, ValueError):
    """Parameter outside its allowed range (negative r, p outside [0,1], alpha <= 0, bad mode)"""


class DimensionError(GaussianStateError, ValueError):
    """Matrix with the wrong shape for the requested operation"""


class ShapeError(DimensionError):
    """Covariance matrix not in the two-mode standard-form sparsity pattern"""


class NumericalError(GaussianStateError, ArithmeticError):
    """A numerical cross-check or tolerance failed"""


class TailError(NumericalError):
    """Fock cutoff too small for the requested tail bound"""


class ExtractionError(NumericalError):
    """Fock coefficients could not be recovered from the coherent generating function"""


class StateError(NumericalError):
    """Truncated operator does not represent a normalised state"""
