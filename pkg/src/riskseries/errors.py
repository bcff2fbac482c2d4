"""Exception types shared across the package.

The command line maps these onto stable exit codes (usage 1, data 2,
numerical 3); library callers catch them directly.
"""


class RiskSeriesError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(RiskSeriesError):
    """A caller passed arguments outside an operation's contract."""


class DataError(RiskSeriesError):
    """Input data violates a structural requirement (bad value, ordering, emptiness)."""


class NumericalError(RiskSeriesError):
    """A computation cannot proceed numerically (rank deficiency, zero variance, ...)."""
