"""Exception types raised across the package."""


class DGZError(Exception):
    """Base class for every error raised by :mod:`dgz`."""


class NonPrime(DGZError, ValueError):
    pass


class DegreeTooLarge(DGZError, ValueError):
    pass


class FieldMismatch(DGZError, ValueError):
    pass


class NonDivisor(DGZError, ValueError):
    pass


class FieldTooLarge(DGZError, ValueError):
    pass


class RemainderNonzero(DGZError, ArithmeticError):
    pass


class DivisionFailure(DGZError, ArithmeticError):
    pass


class SingularMatrix(DGZError, ValueError):
    pass


class IdenticalPoints(DGZError, ValueError):
    pass


class UnknownName(DGZError, KeyError):
    pass


class ScaleExceeded(DGZError, ValueError):
    pass


class TangentConeNotPower(DGZError, ArithmeticError):
    pass


class PointNotOnCurve(DGZError, ValueError):
    pass


class ClassificationMismatch(DGZError, ArithmeticError):
    pass


class SingularCurve(DGZError, ValueError):
    pass


class InvalidQ(DGZError, ValueError):
    pass


class UnknownSuite(DGZError, KeyError):
    pass


class IoFailure(DGZError, OSError):
    pass
