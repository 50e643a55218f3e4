"""Exception hierarchy shared by the solver modules."""


class PsletError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PsletError, ValueError):
    """Invalid model parameters or run settings."""


class DomainError(PsletError, ValueError):
    """A coordinate or energy outside the admissible domain."""


class CapacityError(PsletError):
    """Requested expansion order exceeds the configured cap or the available jet."""


class NoBoundStateError(PsletError):
    """The expansion-point equation has no root in the admissible domain."""


class NoHarmonicMinimumError(PsletError):
    """The harmonic frequency is undefined (non-positive radicand or V'(q0) = 0)."""


class UnsupportedStateError(PsletError):
    """Radially excited states are not handled by the nodeless recursion."""


class ConsistencyError(PsletError):
    """Internal residual check failed; indicates a bookkeeping bug."""


class DegeneratePadeError(PsletError):
    """Padé linear system is singular or too ill-conditioned to trust."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


class NoEigenvalueError(PsletError):
    """The shooting solver could not isolate the requested level."""
