"""Exception hierarchy.

Every domain error carries its class name, which the CLI prints on stderr
so scripts can match on it.
"""


class TsvsError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self):
        return type(self).__name__


class ParseError(TsvsError):
    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


# field-core
class DivisionByZeroPoly(TsvsError, ZeroDivisionError):
    pass


class BothZero(TsvsError):
    pass


class ZeroPolynomial(TsvsError):
    pass


class DegreeCapExceeded(TsvsError):
    pass


# numfield
class NotIrreducible(TsvsError):
    pass


class NotMonic(TsvsError):
    pass


class DivisionByZero(TsvsError, ZeroDivisionError):
    pass


class FieldMismatch(TsvsError, TypeError):
    pass


class NotIrreducibleOverK(TsvsError):
    pass


class BadBasis(TsvsError):
    pass


# funcfield
class NoFit(TsvsError):
    pass


# linalg
class NotSquare(TsvsError):
    pass


class SingularMatrix(TsvsError, ZeroDivisionError):
    pass


class DoesNotSplit(TsvsError):
    pass


class BadEigenvalueList(TsvsError):
    pass


class SimilarityUndecided(TsvsError):
    pass


# bimod / tensor-k0
class NonInvertibleDenominator(TsvsError):
    pass


class NotAHomomorphism(TsvsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotSemisimple(TsvsError):
    pass


class InvariantViolation(TsvsError, AssertionError):
    """A certified invariant failed; this is a defect, not a user error."""


# canonical
class NotComposable(TsvsError):
    pass


class LeibnizViolation(TsvsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class OrderMismatch(TsvsError):
    pass


class NotHomogeneous(TsvsError):
    pass


class ProportionalityFailure(TsvsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotTriangular(TsvsError):
    pass


class MultipleEigenvalues(TsvsError):
    pass


class NotJordanOrdered(TsvsError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotJCF(TsvsError):
    pass
