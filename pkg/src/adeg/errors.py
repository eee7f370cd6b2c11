"""Exception hierarchy shared by every module."""


class AdegError(Exception):
    """Base class. `exit_code` is what the CLI returns when this escapes."""

    exit_code = 1


class UsageError(AdegError):
    exit_code = 2


class NotAGerm(UsageError):
    """Text does not describe a germ vanishing at the origin."""


class SmallCharacteristic(AdegError):
    """The prime is too small for the denominators that appear at this order."""


class NotAUnit(AdegError):
    pass


class ColengthDiverged(AdegError):
    """No stable colength below the maximum truncation order."""


class NotIsolated(AdegError):
    pass


class DegenerateDraws(AdegError):
    """Every random trial produced an ideal of infinite colength."""


class UnitDependence(AdegError):
    """Different unit multiples of the germ gave different values."""


class InternalInconsistency(AdegError):
    pass


class Unsupported(AdegError):
    pass


class Unavailable(AdegError):
    """A requested quantity is not computable for this input (e.g. delta)."""
