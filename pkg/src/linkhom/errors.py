"""Shared exception types.

Everything raised on purpose by this package derives from LinkhomError, so
callers (and the CLI) can distinguish bad input from genuine bugs.
"""

from __future__ import annotations


class LinkhomError(Exception):
    """Base class for all errors raised by linkhom."""


class SchemeError(LinkhomError):
    """Illegal coordinate symbol, unsupported n, or mixed-scheme operands."""


class ParseError(LinkhomError):
    """Syntax error in an expression, vector file, word, or table file.

    Carries enough position information for a usable diagnostic: the source
    name (file path or "<string>"), a 1-based line number when known, and the
    offending token text.
    """

    def __init__(self, message, *, source=None, line=None, token=None):
        self.message = message
        self.source = source
        self.line = line
        self.token = token
        super().__init__(str(self))

    def __str__(self):
        where = []
        if self.source is not None:
            where.append(str(self.source))
        if self.line is not None:
            where.append(f"line {self.line}")
        prefix = ":".join(where)
        text = self.message
        if self.token is not None:
            text = f"{text} (at {self.token!r})"
        return f"{prefix}: {text}" if prefix else text


class TableError(LinkhomError):
    """A table file is malformed, fails validation, or fails its digest."""


class WordError(ParseError):
    """A generator word is malformed."""
