"""Exception types shared across the package."""


class Zeta3Error(Exception):
    """Base class for all package errors."""


class ConstructionError(Zeta3Error):
    """A requested object cannot be built (bad q, disconnected cover, failed search)."""


class InvalidComplexError(Zeta3Error):
    """An operation required a valid complex but validation reported violations."""


class ExactArithmeticError(Zeta3Error):
    """An exactness guarantee failed (inexact division, non-integer interpolation).

    This always indicates either a caller contract violation or an internal
    bug; it is never a recoverable data condition.
    """


class ParseError(Zeta3Error):
    """A complex file could not be parsed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
