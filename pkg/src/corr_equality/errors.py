"""
Exception hierarchy for the correlation equality tools.

Every error carries the process exit code the command-line interface
reports for it.
"""
from typing import Optional


class CorrEqualityError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ValidationError(CorrEqualityError):
    """Inputs violate a documented precondition."""

    exit_code = 2


class InvalidParameterError(ValidationError):
    """A distribution or test parameter is outside its valid range."""


class TooFewObservationsError(ValidationError):
    """A group has fewer than the minimum number of observations."""


class DegenerateDataError(ValidationError):
    """Data cannot produce a usable correlation (constant column, |r| = 1)."""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of a function."""


class NonPositiveVarianceError(DegenerateDataError):
    """A constrained variance estimate would be zero or negative."""


class ConfigError(ValidationError):
    """Configuration file or override is malformed."""


class NumericalInconsistencyError(CorrEqualityError):
    """A quantity that must be non-negative came out negative beyond rounding."""


class DegenerateBootstrapError(CorrEqualityError):
    """All bootstrap replicates are identical, so v(SLR) is zero."""


class InputParseError(CorrEqualityError):
    """An input file could not be read or parsed."""

    exit_code = 3

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")
