"""Exception hierarchy shared by all solver components."""


class SuaspError(Exception):
    """Base class for every error raised by this package."""


class ContractError(SuaspError, ValueError):
    """An operation was called with arguments violating its precondition."""


class SemanticsError(SuaspError):
    """A program violates a semantic restriction, e.g. a shared atom in an inner head."""


class ParseError(SuaspError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class SafetyError(ParseError):
    pass


class GroundingError(SuaspError):
    pass


class GroundingTypeError(GroundingError, TypeError):
    pass


class ResourceLimitError(SuaspError):
    """A configurable resource cap was exceeded (grounder guard or oracle cap)."""


class UnsupportedInstanceError(SuaspError, ValueError):
    """An instance lies outside the fragment an encoder or oracle supports."""
