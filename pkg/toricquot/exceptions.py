"""Exception hierarchy and the exit-code contract of the command line."""

from __future__ import annotations

from typing import Any

__all__ = [
    "EXIT_OK",
    "EXIT_IO",
    "EXIT_VALIDATION",
    "EXIT_PROPERTY",
    "ToricQuotError",
    "DocumentError",
    "ValidationError",
    "ConsistencyError",
]

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_PROPERTY = 3


class ToricQuotError(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code: int = EXIT_IO

    def __init__(self, message: str, *, path: str | None = None, witnesses: list[Any] | None = None):
        self.message = message
        self.path = path
        self.witnesses = list(witnesses or [])
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.path:
            return f"{self.path}: {self.message}"
        return self.message


class DocumentError(ToricQuotError):
    """Unreadable file, malformed JSON or schema violation."""

    exit_code = EXIT_IO


class ValidationError(ToricQuotError, ValueError):
    """A domain value violates a precondition or an invariant."""

    exit_code = EXIT_VALIDATION


class ConsistencyError(ToricQuotError):
    """An identity that must hold mathematically did not."""

    exit_code = EXIT_PROPERTY
