"""Shared exception types."""

from __future__ import annotations


class PreconditionError(ValueError):
    """A documented hypothesis of an operation fails for the given inputs.

    The message names the failed hypothesis so callers (and the CLI) can
    distinguish bad inputs from genuine empirical violations.
    """


class SpecParseError(ValueError):
    """A distribution/mode/weight spec string does not parse.

    ``position`` is the 0-based offset of the offending token in the
    original text, for caret-annotated error messages.
    """

    def __init__(self, message: str, text: str, position: int):
        super().__init__(message)
        self.text = text
        self.position = position

    def annotated(self) -> str:
        caret = " " * self.position + "^"
        return f"{self.args[0]}\n  {self.text}\n  {caret}"
