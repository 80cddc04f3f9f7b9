"""Exception hierarchy shared by all modules."""


class DiracError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameters(DiracError, ValueError):
    pass


class NonPositiveMass(InvalidParameters):
    pass


class FrequencyOutOfGap(InvalidParameters):
    pass


class ZeroAngularIndex(InvalidParameters):
    pass


class ProfileTooShort(DiracError, ValueError):
    pass


class NonPositiveRadius(DiracError, ValueError):
    pass


class NonPositiveScale(DiracError, ValueError):
    pass


class NonPositiveArgument(DiracError, ValueError):
    pass


class OriginSingularity(DiracError, ValueError):
    pass


class QuadratureNotConverged(DiracError, RuntimeError):
    pass


class IntegratorStalled(DiracError, RuntimeError):
    pass


class BracketNotFound(DiracError, RuntimeError):
    pass


class NoConvergence(DiracError, RuntimeError):
    pass


class GapClosed(DiracError, ValueError):
    pass


class NonPositiveQuadraticForm(DiracError, ValueError):
    pass


class GridTooSmall(DiracError, ValueError):
    pass


class WindowNotFound(DiracError, ValueError):
    pass
