"""Exception hierarchy shared by the whole package."""


class CanonStripError(Exception):
    """Base class for every error raised by :mod:`canonstrip`."""


class InsufficientPoints(CanonStripError):
    pass


class DegreeOverflow(CanonStripError):
    """A surplus interpolation point disagrees with the fitted polynomial."""


class ZeroPolynomial(CanonStripError):
    pass


class InvalidGenus(CanonStripError):
    pass


class NonIntegerResult(CanonStripError):
    pass


class PrecisionExhausted(CanonStripError):
    pass


class DimensionMismatch(CanonStripError):
    pass


class SymmetryViolation(CanonStripError):
    pass


class NonConvergence(CanonStripError):
    """Root iteration failed to certify before the precision cap.

    The partially converged state is kept on ``self.partial`` when available.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Indeterminate(CanonStripError):
    """A root lies within its error radius of a strip boundary."""


class NotFullDimensional(CanonStripError):
    pass


class OriginNotInterior(CanonStripError):
    pass
