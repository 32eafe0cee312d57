"""Exception types shared across the library.

Everything derives from FqinvError so callers can catch broadly; the
finer classes mirror the distinct contract violations the public
functions can report.
"""


class FqinvError(Exception):
    pass


# field construction / arithmetic

class FieldError(FqinvError, ValueError):
    pass


class NotPrime(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class MissingModulus(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class DivisionByZero(FqinvError, ZeroDivisionError):
    pass


class FieldMismatch(FqinvError, ValueError):
    """Operands belong to different fields."""


# algebra layer

class ArityMismatch(FqinvError, ValueError):
    """Operands live in algebras with different variable counts."""


class IndexOutOfRange(FqinvError, IndexError):
    pass


class NotDivisible(FqinvError, ArithmeticError):
    """Exact polynomial division failed."""


class DegreeMismatch(FqinvError, ValueError):
    """An argument is not homogeneous in the sense the operation needs."""


class ArityTooSmall(FqinvError, ValueError):
    pass


class ProductTooLarge(FqinvError, ValueError):
    """A brute-force product form was requested beyond its size guard."""


class SerializationError(FqinvError, ValueError):
    pass


# groups

class SingularMatrix(FqinvError, ArithmeticError):
    pass


class CapExceeded(FqinvError, RuntimeError):
    """Breadth-first closure grew past the requested cap."""


class UnknownCase(FqinvError, ValueError):
    pass


class CaseFieldMismatch(FqinvError, ValueError):
    pass


# verification engine

class FeasibilityCapExceeded(FqinvError, RuntimeError):
    """A degree component is too large for the brute-force solver."""


class NotApplicable(FqinvError, ValueError):
    """The requested check is undefined for this case."""
