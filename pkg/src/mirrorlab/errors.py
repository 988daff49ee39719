"""Exception types raised by mirrorlab."""


class MirrorLabError(ValueError):
    """Base class for all mirrorlab errors."""


class DivisionByNonUnit(MirrorLabError):
    pass


class BadConstantTerm(MirrorLabError):
    pass


class NonNilpotentInner(MirrorLabError):
    pass


class NotReversible(MirrorLabError):
    pass


class BadPrime(MirrorLabError):
    pass


class NotFound(MirrorLabError):
    pass


class FormViolation(MirrorLabError):
    """A computed Dwork image matched none of the predicted shapes."""


class IncompleteOrbit(MirrorLabError):
    pass


class NotTriangle(MirrorLabError):
    pass
