"""Shared error types for budget guards and solver applicability."""

from __future__ import annotations

__all__ = [
    "BudgetExceededError",
    "SolverInapplicableError",
    "ConstraintError",
    "GuaranteeFailureError",
]


class BudgetExceededError(RuntimeError):
    """An operation would exceed its configured size budget.

    The exact offending count is always computable without materializing
    the object, and is carried along for diagnostics.
    """

    def __init__(self, what: str, count: int, budget: int):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: needs {count}, budget {budget}")


class SolverInapplicableError(RuntimeError):
    """A base solver's applicability predicate rejected the input
    (e.g. a planar-only solver handed a non-planar piece)."""


class ConstraintError(ValueError):
    """An operation's structural precondition does not hold
    (e.g. a scheme requiring a k-level-restricted input given a deeper one)."""


class GuaranteeFailureError(AssertionError):
    """A verification run found a value violating its guarantee bound."""
