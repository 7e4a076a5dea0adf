"""Exception hierarchy.

Every error raised for a violated precondition derives from
:class:`QpairError`, itself a :class:`ValueError`, so callers that only care
about "bad input" can catch one type.
"""


class QpairError(ValueError):
    """Base class for precondition violations inside the library."""


class NotSquare(QpairError):
    pass


class NotHermitian(QpairError):
    pass


class DimMismatch(QpairError):
    pass


class DimTooSmall(QpairError):
    pass


class DimOrder(QpairError):
    pass


class UnsupportedDims(QpairError):
    pass


class ParamOutOfRange(QpairError):
    pass


class NotNormalized(QpairError):
    pass


class InvalidLabels(QpairError):
    pass


class WeightInvalid(QpairError):
    pass


class IncompleteAnalyzer(QpairError):
    pass


class NegativeProbability(QpairError):
    pass


class AmbiguousOutcome(QpairError):
    """An analyzer projector has rank > 1, so detector clicks are not labelled."""


class IllConditioned(QpairError):
    pass


class IncompleteTomographyWarning(UserWarning):
    """The measurement settings do not span the traceless Hermitian space."""
