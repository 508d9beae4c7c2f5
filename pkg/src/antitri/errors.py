"""Exception types raised by the library.

All of them derive from :class:`AntitriError`, itself a ``ValueError`` so
callers that only care about bad input can catch the builtin.
"""


class AntitriError(ValueError):
    pass


class ZeroPolynomial(AntitriError, ZeroDivisionError):
    pass


class SingularMatrix(AntitriError):
    pass


class NotTriangular(AntitriError):
    pass


class IndexOutOfRange(AntitriError, IndexError):
    pass


class ConstraintViolated(AntitriError):
    pass


class PreconditionViolated(AntitriError):
    pass


class TooFewValues(AntitriError):
    pass


class NotNormalizable(AntitriError):
    pass


class NotClassified(AntitriError):
    pass


class NoPositiveExtension(AntitriError):
    """The jump-rate recursion has no positive solution at ``index``."""

    def __init__(self, index: int, denominator=None):
        self.index = index
        self.denominator = denominator
        super().__init__(f"no positive extension at index {index}")
