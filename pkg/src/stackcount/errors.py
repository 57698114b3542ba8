"""Exception hierarchy shared across stackcount.

Every error a caller can act on derives from StackcountError, so the CLI maps
the whole family to one exit code. Configuration and mini-language errors live
next to their parsers and subclass StackcountError as well.
"""

from __future__ import annotations


class StackcountError(Exception):
    """Base class for domain errors raised by stackcount."""


class GroupError(StackcountError):
    """Raised for invalid permutation input or exceeded group bounds."""


class PermutationSyntaxError(GroupError):
    """Raised when cycle notation or an image list cannot be parsed."""

    def __init__(self, message: str, position: int | None = None) -> None:
        """Initialize PermutationSyntaxError.

        Args:
            message: Error description
            position: Character offset of the offending token, if known
        """
        self.position = position
        super().__init__(message)


class FieldError(StackcountError):
    """Raised when a field descriptor does not fit the group it acts on."""


class TwistError(StackcountError):
    """Raised for malformed twist data."""


class SectorError(StackcountError):
    """Raised for invalid stack descriptors or raising functions."""


class InvariantError(StackcountError):
    """Raised when a/b invariants or predictions are not defined."""


class CountingError(StackcountError):
    """Raised for invalid counting or fitting requests."""


class BudgetExceededError(CountingError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, message: str, budget: int) -> None:
        """Initialize BudgetExceededError.

        Args:
            message: Error description
            budget: The budget that was exceeded
        """
        self.budget = budget
        super().__init__(message)

    def __reduce__(self) -> tuple[type[BudgetExceededError], tuple[str, int]]:
        return type(self), (str(self), self.budget)
