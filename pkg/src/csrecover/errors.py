"""Exception types shared across the package.

Every error raised by csrecover derives from :class:`CsRecoverError`, so
callers (notably the CLI) can map failures to exit codes without matching
on message strings.
"""


class CsRecoverError(Exception):
    """Base class for all csrecover errors."""


class DimensionError(CsRecoverError, ValueError):
    """Empty input, shape mismatch, or out-of-range index."""


class SizeCapError(CsRecoverError, ValueError):
    """Dense-matrix path requested above the oracle size cap."""


class BudgetError(CsRecoverError, ValueError):
    """Measurement budget rounds down to zero samples."""


class DomainError(CsRecoverError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class ZeroDerivativeError(CsRecoverError, ArithmeticError):
    """Newton step undefined: derivative vanishes at the iterate."""


class IterationLimitError(CsRecoverError, RuntimeError):
    """Iteration budget exhausted without meeting the tolerance."""


class LineSearchError(CsRecoverError, RuntimeError):
    """Backtracking line search failed to find an acceptable step."""


class CurvatureError(CsRecoverError, ValueError):
    """Quasi-Newton update requested with non-positive curvature."""


class DegenerateColumnError(CsRecoverError, ValueError):
    """Design matrix has a zero column; coordinate update undefined."""


class ImageFormatError(CsRecoverError, ValueError):
    """Malformed, truncated, or unsupported NetPBM data."""
