"""Exceptions raised by the MiniLang front end."""

from __future__ import annotations


class MiniLangError(Exception):
    """Base class for every front-end failure.

    ``line`` and ``column`` are 1-based; both are 0 when no position applies.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(f"{where}{message}")


class MiniLangSyntaxError(MiniLangError):
    pass


class MiniLangTypeError(MiniLangError):
    pass


class DuplicateMemberError(MiniLangTypeError):
    pass
