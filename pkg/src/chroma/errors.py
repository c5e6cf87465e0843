"""Exception hierarchy shared by every chroma module."""

from __future__ import annotations


class ChromaError(Exception):
    """Base class for all library errors."""


class DimensionError(ChromaError, ValueError):
    pass


class DuplicatePointError(ChromaError, ValueError):
    pass


class GeneralPositionError(ChromaError, ValueError):
    """Raised when a point set violates the predicates a family needs."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class ShearError(ChromaError, ValueError):
    pass


class DomainMismatchError(ChromaError, ValueError):
    pass


class BudgetExceededError(ChromaError, RuntimeError):
    pass


class InconsistencyError(ChromaError, RuntimeError):
    """An internal guarantee failed; this signals a bug, not bad input."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details
