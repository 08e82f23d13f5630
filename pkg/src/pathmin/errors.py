"""Exception hierarchy shared by all modules."""


class PathMinError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(PathMinError, ValueError):
    pass


class OutOfRangeError(PathMinError, IndexError):
    pass


class TreeValidationError(PathMinError, ValueError):
    """Input edges do not describe a tree."""


class CycleError(TreeValidationError):
    pass


class DisconnectedError(TreeValidationError):
    pass


class DuplicateEdgeError(TreeValidationError):
    pass


class NodeRangeError(TreeValidationError):
    pass


class ParseError(PathMinError, ValueError):
    """Malformed text input. ``line`` is 1-based, or None if not applicable."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class LadderInvariantError(PathMinError, AssertionError):
    """A query segment fell outside its base ladder. Unreachable for a correct build."""


class QueryOracleCallError(PathMinError, RuntimeError):
    """The comparison oracle was invoked while answering queries."""


class EnumerationLimitError(PathMinError, ValueError):
    pass
