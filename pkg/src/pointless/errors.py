"""Exception types shared across the toolkit."""


class PointlessError(Exception):
    """Base class for all toolkit errors."""


# -- algebra ----------------------------------------------------------------

class CompositeCharacteristic(PointlessError):
    pass


class ReduciblePolynomial(PointlessError):
    pass


class DivisionByZero(PointlessError):
    pass


class MixedFields(PointlessError):
    pass


class NoSquareRoot(PointlessError):
    pass


class OddCharacteristic(PointlessError):
    pass


class EvenCharacteristic(PointlessError):
    pass


class DuplicateNodes(PointlessError):
    pass


class ExtensionTooLarge(PointlessError):
    pass


# -- curves -----------------------------------------------------------------

class UnsupportedShape(PointlessError):
    pass


class ZeroPolynomial(PointlessError):
    pass


# -- elliptic ---------------------------------------------------------------

class MixedCurves(PointlessError):
    pass


class ZeroFunction(PointlessError):
    pass


class EmptyCosetUnderConstraint(PointlessError):
    """A coset of mE(F_q) has no representative satisfying the torsion rule."""


class NotReached(PointlessError):
    """Raised by code paths that are implemented as recorded stubs."""


# -- zeta -------------------------------------------------------------------

class NonIntegralResult(PointlessError):
    """Counts are inconsistent with any curve of the requested genus."""


# -- density ----------------------------------------------------------------

class NotTransitive(PointlessError):
    pass


class GroupTooLarge(PointlessError):
    pass


class UnknownFamily(PointlessError):
    pass


# -- search -----------------------------------------------------------------

class BudgetExceeded(PointlessError):
    pass


# -- harness ----------------------------------------------------------------

class ParseError(PointlessError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(PointlessError):
    def __init__(self, message, entry_id=None):
        self.entry_id = entry_id
        if entry_id is not None:
            message = f"entry {entry_id!r}: {message}"
        super().__init__(message)
