"""Exception types shared across the package."""


class JnrError(Exception):
    """Base class for all jnrlab errors."""


class NonSquare(JnrError, ValueError):
    pass


class NotHermitian(JnrError, ValueError):
    pass


class NoConvergence(JnrError, RuntimeError):
    """Eigensolver iteration budget exhausted."""


class DimensionMismatch(JnrError, ValueError):
    pass


class ComponentCountMismatch(JnrError, ValueError):
    pass


class ShapeMismatch(JnrError, ValueError):
    pass


class KOutOfRange(JnrError, ValueError):
    pass


class DegenerateGap(JnrError, ValueError):
    """Spectral gap at the requested position is below tolerance."""


class TooManySubsets(JnrError, ValueError):
    pass


class EmptyAccumulation(JnrError, ValueError):
    pass


class DimMismatch(JnrError, ValueError):
    pass


class ParseError(JnrError, ValueError):
    """Malformed input file (CLI exit code 2)."""


class ValidationError(JnrError, ValueError):
    """Well-formed input failing semantic validation (CLI exit code 3)."""
