"""Exception hierarchy shared by the package."""


class HKError(Exception):
    """Base class for every error raised by hkbott."""


class MatrixFormatError(HKError, ValueError):
    """A matrix description could not be turned into a Bott matrix."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class NonBinaryEntry(MatrixFormatError):
    pass


class NotStrictlyUpperTriangular(MatrixFormatError):
    pass


class RaggedRows(MatrixFormatError):
    pass


class MatrixTooLarge(MatrixFormatError):
    pass


class AmbientMismatch(HKError, ValueError):
    """Two cohomology classes live over different Bott matrices."""


class IllFormedEndo(HKError, ValueError):
    """An integer matrix does not define a homomorphism of the group."""


class ZeroMultiplier(HKError, ValueError):
    pass


class IncomparableUndetermined(HKError, ValueError):
    """Isomorphism cannot be decided because a summand is not determined."""


class DimensionOutOfRange(HKError, ValueError):
    pass


class UnknownSummand(HKError, ValueError):
    pass


class NotExpanding(HKError, ValueError):
    pass


class NotInGroup(HKError, ValueError):
    """An affine motion is not an element of the Bieberbach group."""


class InternalInconsistency(HKError, AssertionError):
    """A cross-check between two independent computations failed."""
