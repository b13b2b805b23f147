"""Exception hierarchy shared by every module."""


class HHLieError(Exception):
    pass


class FieldMismatch(HHLieError, TypeError):
    """Arithmetic attempted between elements of different fields."""


class BadField(HHLieError, ValueError):
    pass


class NotSquare(HHLieError, ValueError):
    pass


class SubspaceNotContained(HHLieError, ValueError):
    pass


class ParseError(HHLieError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidRelation(ParseError):
    pass


class EmptySubset(HHLieError, ValueError):
    pass


class NotADerivation(HHLieError, ValueError):
    pass


class HasLoops(HHLieError, ValueError):
    pass


class NotPrimeField(HHLieError, ValueError):
    pass


class UnsupportedCharacteristic(HHLieError, ValueError):
    pass


class WrongCharacteristic(HHLieError, ValueError):
    pass


class InvalidLieAlgebra(HHLieError, ValueError):
    """Structure constants violate antisymmetry or the Jacobi identity."""


class InvalidAlgebra(HHLieError, ValueError):
    """Structure constants violate associativity or idempotent relations."""
