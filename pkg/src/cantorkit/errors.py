"""Exception hierarchy shared by the whole package."""


class CantorkitError(Exception):
    """Base class for every error raised by cantorkit."""


class SDLSyntaxError(CantorkitError):
    """Malformed SDL text. Carries a 1-based line/column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.reason = message
        self.line = line
        self.column = column


class UnboundVariable(SDLSyntaxError):
    pass


class ZeroDivisor(SDLSyntaxError):
    pass


class InvalidCode(CantorkitError):
    """A natural number that is not the Gödel code of any term."""


class InvalidSpec(CantorkitError):
    pass


class InvalidLevel(CantorkitError):
    pass


class EqualPoints(CantorkitError):
    pass


class NonCanonical(CantorkitError):
    pass


class NotEventuallyPeriodic(CantorkitError):
    """Raised when a sequence cannot be certified eventually periodic."""
