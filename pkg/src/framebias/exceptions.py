"""Exception hierarchy.

Every error raised on purpose by the package derives from ``FramebiasError``.
Validation and parse failures also subclass ``ValueError`` so callers that
only catch builtin exceptions keep working.
"""

from __future__ import annotations


class FramebiasError(Exception):
    """Base class for package errors."""


class ConfigurationError(FramebiasError, ValueError):
    """Raised when an estimator or scorer is configured inconsistently."""


class ValidationError(FramebiasError, ValueError):
    """Raised when input data violates a schema or invariant."""


class LexiconParseError(ValidationError):
    """A malformed row in a lexicon file."""

    def __init__(self, message: str, lineno: int | None = None, path: str | None = None):
        self.lineno = lineno
        self.path = path
        where = f"{path}:{lineno}: " if path and lineno else (f"line {lineno}: " if lineno else "")
        super().__init__(f"{where}{message}")


class CorpusParseError(ValidationError):
    """Malformed JSON in a JSONL input file."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class SchemaError(ValidationError):
    """One or more records failed schema validation.

    ``errors`` holds ``(lineno, message)`` tuples, one per problem found.
    """

    def __init__(self, errors: list[tuple[int | None, str]]):
        self.errors = list(errors)
        lines = [f"line {n}: {msg}" if n is not None else msg for n, msg in self.errors]
        super().__init__("; ".join(lines))


class UndefinedCorrelationError(FramebiasError, ValueError):
    """A correlation coefficient is undefined (one input has zero rank variance)."""
