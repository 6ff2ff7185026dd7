"""Exception hierarchy shared by all sumsetlab modules."""

from __future__ import annotations


class SumsetLabError(Exception):
    """Base class for every error raised by this package."""


class InputError(SumsetLabError, ValueError):
    """Malformed or out-of-range input (empty set, bad family spec, ...)."""


class DomainError(SumsetLabError, ValueError):
    """A function cannot be evaluated exactly or monotonically on a set."""


class Unsupported(SumsetLabError, TypeError):
    """Operation not defined for this function kind."""


class ResourceError(SumsetLabError, RuntimeError):
    """A computation would exceed the configured memory budget.

    Raised *before* allocation, with the estimate attached.
    """

    def __init__(self, estimated_bytes: int, budget_bytes: int, what: str = "") -> None:
        self.estimated_bytes = estimated_bytes
        self.budget_bytes = budget_bytes
        msg = f"estimated {estimated_bytes} bytes exceeds budget {budget_bytes}"
        if what:
            msg = f"{what}: {msg}"
        super().__init__(msg)


class VerificationError(SumsetLabError, AssertionError):
    """An internal cross-check failed while verify mode was active."""
