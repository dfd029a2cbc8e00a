"""Exception types raised across the toolkit."""


class CommAwareError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(CommAwareError):
    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class EmptyGraphError(CommAwareError):
    pass


class UndefinedStatsError(CommAwareError):
    pass


class ParameterError(CommAwareError, ValueError):
    pass


class PartitionError(CommAwareError):
    pass


class IncompleteCellError(CommAwareError):
    """A (network, threshold, fraction) cell is missing one or more measures."""
