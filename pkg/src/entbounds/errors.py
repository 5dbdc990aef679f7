"""Exception types raised across the package."""

from __future__ import annotations


class EntboundsError(Exception):
    """Base class for all package errors."""


class DomainError(EntboundsError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class SizingError(DomainError):
    """A requested Hilbert-space dimension exceeds the supported maximum."""


class NumericalError(EntboundsError, ArithmeticError):
    """A numerical routine failed to converge or produced an inconsistent result."""


class PreconditionError(EntboundsError, ValueError):
    """A bound was requested on inputs that violate the ordering it assumes.

    ``index`` is the 1-based position of the first failing condition (matching
    the party label ``B_index``), or ``None`` when no single index is to blame.
    """

    def __init__(self, message: str, index: int | None = None, slack: float | None = None):
        super().__init__(message)
        self.index = index
        self.slack = slack
