"""
Exception hierarchy for tfep.

Every error raised by the library derives from TfepError and carries the
process exit code the CLI should return for it.
"""

from typing import Any


class TfepError(Exception):
    """Base exception for tfep errors."""

    exit_code: int = 1


class UsageError(TfepError):
    """Raised for malformed flags, unknown families, formats or grammar."""

    exit_code = 2


class ConfigurationError(TfepError):
    """Raised when a study configuration cannot be run."""

    exit_code = 2


class DomainError(TfepError):
    """Raised when an argument lies outside the domain of an operation."""

    exit_code = 2


class DataError(TfepError):
    """Raised for unusable input data (non-finite values, bad cells, missing columns)."""

    exit_code = 3


class OverTrimmedError(DataError):
    """Raised when a trim window keeps fewer than two observations."""

    def __init__(self, message: str, k_n: int | None = None, l_n: int | None = None):
        super().__init__(message)
        self.k_n = k_n
        self.l_n = l_n


class NumericalError(TfepError):
    """Raised when a numerical routine fails to converge."""

    exit_code = 4

    def __init__(self, message: str, diagnostics: dict[str, Any] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InfiniteMomentError(NumericalError):
    """Raised when an untrimmed population moment does not exist."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message, diagnostics={"order": order})
        self.order = order


class DegenerateError(NumericalError):
    """Raised when a statistic needed for an interval is zero or negative."""

    pass
