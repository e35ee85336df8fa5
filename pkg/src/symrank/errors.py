"""Typed errors shared across the package."""


class SymrankError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeModulus(SymrankError):
    pass


class ReducibleModulus(SymrankError):
    pass


class FieldTooSmall(SymrankError):
    pass


class FieldMismatch(SymrankError):
    pass


class DimMismatch(SymrankError):
    pass


class NotSquare(SymrankError):
    pass


class NotMember(SymrankError):
    pass


class IdentityMissing(SymrankError):
    pass


class SingularS(SymrankError):
    pass


class BudgetExceeded(SymrankError):
    pass


class EmptySpace(SymrankError):
    pass
