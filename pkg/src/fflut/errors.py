"""Exception hierarchy for the fflut package.

Every error raised by the library derives from FflutError so callers (and
the CLI) can distinguish library failures from programming errors.
"""


class FflutError(Exception):
    """Base class for all fflut errors."""


class CompositeModulus(FflutError):
    """The requested field modulus is not prime."""


class ModulusTooLarge(FflutError):
    """The requested field modulus exceeds the supported maximum (256)."""


class KeyOverflow(FflutError):
    """Packing the vector would exceed the 64-bit key width."""


class KeyOutOfRange(FflutError):
    """The packed key does not correspond to a vector of the given length."""


class LengthMismatch(FflutError):
    """A vector length does not match what the operation requires."""


class LengthNotPowerOfTwo(FflutError):
    """The input length must be a power of two."""


class GuardExceeded(FflutError):
    """Input size exceeds the guard bound of a quadratic-cost operation."""


class NonSquareBase(FflutError):
    """The base matrix of a Kronecker power must be square."""


class IncompatibleTable(FflutError):
    """The supplied lookup table does not match the requested operation."""


class WrongField(FflutError):
    """The operation is only defined over a specific field."""


class DimensionMismatch(FflutError):
    """Matrix dimensions are incompatible with the operation."""


class MemCapExceeded(FflutError):
    """Building the lookup table would exceed the memory cap."""

    def __init__(self, message: str, required_bytes: int = 0):
        super().__init__(message)
        self.required_bytes = required_bytes


class CorruptTable(FflutError):
    """A serialized table failed structural checks or its oracle spot-check."""


class BadFileFormat(FflutError):
    """A data file does not conform to its declared format."""


class UnverifiedIdentity(FflutError):
    """A bilinear identity failed coefficient verification.

    Carries the first counterexample found (a `Counterexample` from
    fflut.matmul) when one is available.
    """

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
