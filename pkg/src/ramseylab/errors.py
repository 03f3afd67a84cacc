"""Exception types shared across ramseylab."""

from __future__ import annotations

from typing import Any


class RamseyLabError(Exception):
    """Base class for every error raised by the library."""


class ValidationError(RamseyLabError):
    """Input rejected: malformed literal, violated law, unknown name."""

    def __init__(self, message: str, *, law: str | None = None, witness: Any = None) -> None:
        super().__init__(message)
        self.law = law
        self.witness = witness


class CategoryLawError(ValidationError):
    pass


class FunctorLawError(ValidationError):
    pass


class NonMonoError(ValidationError):
    pass


class BudgetExceeded(RamseyLabError):
    def __init__(self, message: str, *, budget: str, requested: int, limit: int) -> None:
        super().__init__(message)
        self.budget = budget
        self.requested = requested
        self.limit = limit


class UnsupportedQuery(RamseyLabError):
    """The query is well formed but outside what the engine answers."""


def check_budget(budget: str, requested: int, limit: int) -> None:
    if requested > limit:
        raise BudgetExceeded(
            f"{budget} budget exceeded: {requested} > {limit}",
            budget=budget,
            requested=requested,
            limit=limit,
        )
