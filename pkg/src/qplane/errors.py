"""Exception hierarchy shared by every qplane module."""


class QPlaneError(ValueError):
    """Base class for all domain errors raised by qplane."""


class ModulusMismatch(QPlaneError):
    pass


class DivisionByZero(QPlaneError, ZeroDivisionError):
    pass


class NonResidue(QPlaneError):
    pass


class DimensionMismatch(QPlaneError):
    pass


class EmptySet(QPlaneError):
    pass


class BadSpec(QPlaneError):
    pass


class IsotropicUnavailable(QPlaneError):
    pass


class SizeTooLarge(QPlaneError):
    pass


class WrongResidueClass(QPlaneError):
    """Raised when an operation needs q = 3 mod 4 and gets q = 1 mod 4."""


class LengthMismatch(QPlaneError):
    pass


class TranslationOnly(QPlaneError):
    pass


class TooLarge(QPlaneError):
    """An enumeration guard was exceeded."""


class BadDims(QPlaneError):
    pass


class MixedDims(QPlaneError):
    pass


class ZeroLength(QPlaneError):
    pass


class NoAnchor(QPlaneError):
    pass


class ZeroBaseLength(QPlaneError):
    pass


class AsymmetricInput(QPlaneError):
    pass


class NonzeroDiagonal(QPlaneError):
    pass
