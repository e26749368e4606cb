"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``InvalidInput`` -> 1,
``PreconditionError`` (and budget/cap errors) -> 2, ``InternalAssertion`` -> 3.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(ToolkitError, ValueError):
    """Malformed or out-of-range input data (loops, duplicates, bad files)."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ToolkitError, ValueError):
    """A documented precondition of an operation does not hold."""


class SearchBudgetExceeded(ToolkitError):
    """A backtracking search hit its node budget before deciding.

    Kept distinct from a negative answer: "slow" never means "nonexistent".
    """

    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"search budget of {budget} nodes exhausted")


class CapExceeded(PreconditionError):
    """Instance is larger than an oracle's configured cap."""


class InternalAssertion(ToolkitError, AssertionError):
    """A step that the underlying theorem guarantees has failed.

    Always a bug report: either the implementation or the reading of a proof
    step is wrong.
    """

    def __init__(self, message: str, trace: list | None = None) -> None:
        self.trace = trace or []
        super().__init__(message)


class CascadeExhausted(InternalAssertion):
    """No recolouring move applied during a total-colouring augmentation."""


class HubNotCompleteToBag(InternalAssertion):
    """The hub vertex was expected to be adjacent to all of its bag and is not.

    Surfaced separately because it would indicate a misreading of the
    counting argument that forces |F| = k + 1, not an ordinary bug.
    """
