"""Exception hierarchy.

The CLI maps these onto exit codes: validation problems exit 1, cases the
theory does not cover exit 2, blown enumeration budgets exit 3.
"""

from __future__ import annotations


class StrongApproxError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(StrongApproxError, ValueError):
    """Input data violates a model invariant.

    ``path`` names the offending field in dotted form (``curve.places[2].degree``)
    when the error originates from a scenario file.
    """

    def __init__(self, message: str, path: str | None = None) -> None:
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)

    def __str__(self) -> str:
        return f"{self.path}: {self.message}" if self.path else self.message


class UnknownPlaceError(ValidationError, KeyError):
    """A place id is not registered on the curve."""

    def __init__(self, place_id: str, path: str | None = None) -> None:
        self.place_id = place_id
        super().__init__(f"unknown place id {place_id!r}", path)

    __str__ = ValidationError.__str__


class ModelInconsistencyError(ValidationError):
    """Declared data contradicts a proven constraint (e.g. index vs degrees)."""


class HypothesisError(ValidationError):
    """An operation was called without the hypothesis it depends on."""


class PreconditionError(StrongApproxError, ValueError):
    """An operation's precondition does not hold for its arguments."""


class UnsupportedCaseError(StrongApproxError):
    """The requested computation is outside what the theory determines."""


class BudgetExceededError(StrongApproxError):
    """An exhaustive enumeration would exceed its tuple budget."""


class WitnessNotFoundError(StrongApproxError):
    """The registered place sample is too small to exhibit a witness."""
