"""Exception types raised across the package."""


class GenEntError(Exception):
    """Base class for all package errors."""


class SizeError(GenEntError, ValueError):
    """A requested object exceeds the configured dense-storage limits."""


class ContractError(GenEntError, ValueError):
    """An input violates an operation's precondition (Hermiticity, dims, ...)."""


class RankError(GenEntError, ValueError):
    """Operators handed to the orthonormalizer are linearly dependent."""


class DegenerateReferenceError(GenEntError, ValueError):
    """A calibration reference state has (numerically) zero projection on the algebra."""
