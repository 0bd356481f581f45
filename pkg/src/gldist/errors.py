"""Exception hierarchy.

Every error raised by the library derives from :class:`GldistError`; the
input-validation ones are also :class:`ValueError` so callers that only know
the builtin still catch them.
"""

from __future__ import annotations


class GldistError(Exception):
    """Base class for all library errors."""


class ValidationError(GldistError, ValueError):
    """Input failed a structural or semantic check."""


class EmptySegment(ValidationError):
    pass


class LatticeMismatch(ValidationError):
    pass


class UnknownLine(ValidationError):
    pass


class NotSelfDualLine(ValidationError):
    pass


class NotRigid(ValidationError):
    pass


class NotALadder(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class SchemaError(ValidationError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class InconsistentPartners(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    """A precondition of the induced-distinction criterion does not hold.

    ``reason`` is ``"NotProperLadder"`` or ``"NotMutuallyUnlinked"``.
    """

    def __init__(self, reason: str, message: str = ""):
        super().__init__(f"{reason}: {message}" if message else reason)
        self.reason = reason


class DslSyntaxError(ValidationError, SyntaxError):
    """Malformed DSL text; ``span`` is the (start, end) offset of the culprit.

    Also a builtin :class:`SyntaxError`, with ``offset`` 1-based as usual.
    """

    def __init__(self, message: str, span: tuple[int, int], text: str = ""):
        full = f"{message} at {span[0]}..{span[1]}"
        super().__init__(full)
        self.msg = full
        self.span = span
        self.text = text
        self.offset = span[0] + 1


class BoundExceeded(GldistError):
    pass


class ConsistencyViolation(GldistError, AssertionError):
    """Two independently computed classifications disagree. Always a bug."""
