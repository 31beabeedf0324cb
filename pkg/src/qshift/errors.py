"""Exception types shared across the package."""


class QshiftError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QshiftError):
    """A parameter is outside the mathematically allowed range (q <= 0, alpha <= 0, ...)."""


class SpecParseError(QshiftError):
    """A textual potential spec could not be parsed."""


class WrongFamilyError(QshiftError):
    """An operation was asked to act on a potential family it does not apply to."""


class NoSuchLevelError(QshiftError):
    """Requested quantum number n is at or above the number of bound states."""


class NotNormalizableError(QshiftError):
    """The requested closed-form state is not square integrable."""


class PoleError(QshiftError):
    """A hypergeometric series parameter hits a pole of the coefficient recurrence."""


class ConvergenceError(QshiftError):
    """A numeric routine failed to reach its accuracy target."""


class PinningError(QshiftError):
    """No candidate formula interpretation matched the reference solver."""


class ConfigurationError(QshiftError):
    """Inconsistent solver or sweep configuration."""
