"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Raised when an input violates an operation's precondition or file schema."""


class Inconsistency(Exception):
    """Raised when interval facts about a quantity become empty (lo > hi).

    ``sources`` holds the two trace entries (or notes) whose bounds collide.
    """

    def __init__(self, message: str, sources: tuple = ()) -> None:
        super().__init__(message)
        self.sources = tuple(sources)
