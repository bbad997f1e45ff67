"""Enumeration budget shared by every exhaustive kernel."""
from __future__ import annotations

from growthlab.settings import ENUMERATION_BUDGET


class BudgetExceededError(Exception):
    """Exception raised when an enumeration would exceed the step budget."""


def check_budget(steps: int, label: str, budget: int = ENUMERATION_BUDGET) -> None:
    """Raise BudgetExceededError when an enumeration of steps elementary steps is over budget.

    Args:
        steps: Number of elementary steps the enumeration would take.
        label: Name of the enumeration, used in the error message.
        budget: Maximum number of steps allowed.
    """
    if steps > budget:
        error_message = f"{label} needs {steps} steps which is over the budget of {budget}"
        raise BudgetExceededError(error_message)
