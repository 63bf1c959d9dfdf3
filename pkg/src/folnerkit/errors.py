"""Shared exception types.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps these onto distinct exit codes.
"""

from __future__ import annotations


class FolnerkitError(Exception):
    """Base class for all library errors."""


class InvalidConfigError(FolnerkitError):
    """A descriptor, schedule, window or CLI option is malformed.

    The message names the offending field.
    """


class GroupMismatchError(FolnerkitError):
    """Operands belong to different groups."""


class BudgetExceededError(FolnerkitError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, message: str, *, required: int, budget: int) -> None:
        super().__init__(message)
        self.required = required
        self.budget = budget


class SearchExhaustedError(FolnerkitError):
    """A bounded search ran out of room without a definite answer."""


class CertificateError(FolnerkitError):
    """A certificate check failed; carries the witness of the violation."""

    def __init__(self, message: str, *, witness=None) -> None:
        super().__init__(message)
        self.witness = witness


class ViolationFoundError(FolnerkitError):
    """A finite-slice emptiness check found a violating triple."""

    def __init__(self, message: str, *, certificate=None) -> None:
        super().__init__(message)
        self.certificate = certificate
