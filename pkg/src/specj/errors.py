"""Exception hierarchy shared by the specj modules."""

from __future__ import annotations


class SpecjError(Exception):
    """Base class for every error raised by this package."""


class SpecError(SpecjError):
    """A SpecJ document could not be turned into a model."""


class MalformedXml(SpecError):
    pass


class SchemaError(SpecError):
    pass


class DuplicateBlock(SchemaError):
    def __init__(self, name: str):
        super().__init__(f"duplicate block name {name!r}")
        self.name = name


class ParseError(SpecjError):
    """Component source text does not follow the accepted grammar.

    ``line`` and ``column`` are 1-based; ``expected`` is the set of token
    descriptions that would have let the parser continue.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 expected: frozenset[str] | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected or ())
        where = f"{line}:{column}: " if line else ""
        tail = ""
        if self.expected:
            tail = " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{where}{message}{tail}")


class MalformedResults(SpecjError):
    pass


class InvalidIdentifier(SpecjError):
    pass


class PlanConflict(SpecjError):
    def __init__(self, subject: str, reason: str = ""):
        msg = subject if not reason else f"{subject}: {reason}"
        super().__init__(msg)
        self.subject = subject


class CorpusError(SpecjError):
    """Raised for unreadable corpus directories and invalid recipes."""
