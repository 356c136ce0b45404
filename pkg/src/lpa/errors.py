"""Exception hierarchy shared by every module."""


class LpaError(Exception):
    """Base class for all library errors."""


class GraphError(LpaError):
    """Malformed graph data (unknown vertex, duplicate name, dangling edge)."""


class PathError(LpaError):
    """A sequence of edges that does not compose, or references unknown edges."""


class ParseError(LpaError):
    """Syntax error in an element expression; ``position`` is a 0-based offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(LpaError):
    """An operation was called outside its domain (e.g. c not a basic closed path)."""


class FieldMismatchError(LpaError):
    """Operands live over different graphs, fields or bases."""


class NotInvertibleError(LpaError):
    """A power series with zero constant term was inverted."""


class NoSolutionError(LpaError):
    """The equation has no solution in the module."""
