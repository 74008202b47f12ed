"""
Domain errors. Everything is a ValueError so callers can treat bad input uniformly.
"""


class InvalidSubsystemError(ValueError):
    pass


class ShapeMismatchError(ValueError):
    pass


class InvalidStateError(ValueError):
    pass


class DegeneratePairError(ValueError):
    pass


class HypergraphError(ValueError):
    pass


class QuantumUnitError(ValueError):
    pass


class NegativeEntriesError(ValueError):
    pass


class EmptySupportError(ValueError):
    pass


class ExhaustionGuardError(ValueError):
    pass


class NonPhysicalError(ValueError):
    pass


class InputFileError(ValueError):
    """
    Malformed input file, with the location of the problem when known.
    """

    def __init__(self, path: str, message: str, line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        location = path
        if line is not None:
            location = f"{path}:{line}:{column or 0}"
        super().__init__(f"{location}: {message}")
