"""Exception hierarchy shared by all homrec modules."""


class HomRecError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HomRecError, ValueError):
    """Malformed text input. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(HomRecError):
    """An enumeration would exceed its configured step budget."""


class NotGraphic(HomRecError, ValueError):
    """The degree sequence has no simple-graph realization."""


class PreconditionViolated(HomRecError, ValueError):
    pass


class Inconsistent(HomRecError, ValueError):
    """A star count vector cannot come from any graph."""


class InternalInconsistency(HomRecError, AssertionError):
    """A post-hoc validation failed. Always a bug, never bad input."""
