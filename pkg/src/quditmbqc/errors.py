"""Exception types shared across the package."""


class QuditMbqcError(Exception):
    """Base class for all package errors."""


class UnsupportedModulusError(QuditMbqcError):
    """Operation requires a field modulus (prime or prime power)."""


class SizeGuardError(QuditMbqcError):
    """Instance exceeds the exhaustive-enumeration guard."""


class PhaseDomainError(QuditMbqcError):
    """A phase is not expressible as a d-th root of unity."""


class SparseFormError(QuditMbqcError):
    """A state left the uniform tau-power sparse representation."""


class InconsistencyError(QuditMbqcError):
    """Dense backend found a phase beyond the snapping tolerance."""


class PlanFormatError(QuditMbqcError):
    """Plan file is malformed; message carries field diagnostics."""


class VerificationError(QuditMbqcError):
    """Compiled plan disagrees with its target table."""


class UnsupportedWitnessError(QuditMbqcError):
    """No witness procedure applies to the instance."""
