"""Exception hierarchy. CLI exit codes hang off ``exit_code``."""


class EpiGhostError(Exception):
    exit_code = 1


class FormatError(EpiGhostError):
    """Malformed or unreadable EPIK file."""

    exit_code = 2
    code = "format"


class BadMagicError(FormatError):
    code = "bad_magic"


class VersionError(FormatError):
    code = "version_mismatch"


class TruncatedError(FormatError):
    code = "truncated"


class DimensionError(FormatError):
    code = "dimension_overflow"


class ConfigError(EpiGhostError, ValueError):
    exit_code = 3


class NumericError(EpiGhostError, ArithmeticError):
    exit_code = 4


class EstimationError(NumericError):
    """A correction parameter could not be estimated from the data."""


class UndefinedMetricError(NumericError):
    """A ratio metric has a zero denominator."""
