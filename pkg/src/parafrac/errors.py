"""Exception hierarchy shared by the library and the CLI."""


class ParafracError(Exception):
    """Base class for every error raised by parafrac."""


class RingMismatchError(ParafracError, ValueError):
    pass


class NonHomogeneousError(ParafracError, ValueError):
    """A length-type operation received non-homogeneous data."""


class NotAParameterSystem(ParafracError, ValueError):
    pass


class CharacteristicError(ParafracError, ValueError):
    pass


class PreconditionError(ParafracError, ValueError):
    pass


class StabilizationError(ParafracError, RuntimeError):
    """An ascending or descending chain did not settle below the cap."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class ParseError(ParafracError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)
        self.message = message
