"""Exception hierarchy shared by all semicolor modules."""


class SemicolorError(Exception):
    """Base class; carries the CLI exit code for this failure class."""

    exit_code = 1


class InvalidParameterError(SemicolorError):
    """An argument violates a documented precondition."""

    exit_code = 2


class ResourceLimitError(SemicolorError):
    """A computation would exceed a configured size bound."""

    exit_code = 3


class NotAPartitionError(InvalidParameterError):
    """Constructed blocks overlap or fail to cover the group."""

    def __init__(self, message, colliding=None):
        super().__init__(message)
        self.colliding = colliding


class UnsupportedPatternError(InvalidParameterError):
    """Operation requires a pattern family this input does not belong to."""
