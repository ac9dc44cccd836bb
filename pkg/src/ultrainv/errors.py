"""Exception types shared across the package."""


class UltrainvError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(UltrainvError):
    """Shapes or ambient dimensions of the operands do not agree."""


class NotSquare(UltrainvError):
    """A square matrix was required."""


class NotSquareAmbient(UltrainvError):
    """An operator space over a square matrix space was required."""


class SingularU(UltrainvError):
    """A matrix that had to be invertible is singular."""


class BadSplit(UltrainvError):
    """Declared block sizes do not match the matrix."""


class NotNilpotent(UltrainvError):
    """The minimal polynomial is not a pure power of z."""


class SpectrumIncomplete(UltrainvError):
    """The declared roots do not multiply out to the minimal polynomial."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class BadIndex(UltrainvError):
    """An eigenvalue index or eigenvalue is not part of the decomposition."""


class ZeroWeight(UltrainvError):
    """Weighted shifts require all weights to be nonzero."""


class SpectraOverlap(UltrainvError):
    """Declared block spectra must be disjoint."""


class PreconditionViolated(UltrainvError):
    """An argument violates a documented mathematical precondition."""


class InternalInconsistency(UltrainvError):
    """Two routes that must agree by theorem disagreed; implementation bug."""


class InputFileError(UltrainvError):
    """A JSON input file is malformed or inconsistent."""
