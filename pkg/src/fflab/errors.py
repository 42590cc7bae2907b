"""Exception hierarchy shared by every fflab module."""


class FFLabError(Exception):
    """Base class for all library errors."""


class ConfigError(FFLabError, ValueError):
    """Invalid configuration or a desk-scale cap was exceeded."""


class UnsupportedError(FFLabError):
    """The (model, place, divisor, pivot) combination is outside the supported class."""


class ExhaustedSearch(FFLabError):
    """A deterministic search ran out of candidates; extending the base field may help."""


class PreconditionError(FFLabError, ValueError):
    """An operation was called on inputs violating its precondition."""


class VerificationFailure(FFLabError, AssertionError):
    """A checked mathematical postcondition did not hold."""


class PoleError(FFLabError, ZeroDivisionError):
    """A function was evaluated at one of its poles."""
