"""Exception types shared across the package."""


class LetterGraphError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInstanceError(LetterGraphError):
    """The input violates a structural precondition (bad tokens, missing
    vertices, mismatched letter counts, and so on)."""


class SizeLimitError(LetterGraphError):
    """An exhaustive-search routine was asked to handle an instance beyond
    its documented size guard."""


class InternalConsistencyError(LetterGraphError):
    """A result failed its own re-verification; this indicates a bug in the
    pipeline, never a property of the input."""
