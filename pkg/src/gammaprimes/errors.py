"""Exception hierarchy shared by every module."""


class GammaPrimesError(Exception):
    """Base class for all library errors."""


class DomainError(GammaPrimesError, ValueError):
    """Argument outside the mathematical domain of the function."""


class PoleError(DomainError):
    """Argument sits on a pole (Ei(0), E1(0))."""


class BranchError(DomainError):
    """Argument lies on the branch cut of a multivalued function."""


class DivergenceError(DomainError):
    """Series or product does not converge for this argument."""


class AccuracyLossError(GammaPrimesError, ArithmeticError):
    """Double precision cannot deliver the documented accuracy.

    ``estimate`` and ``bound`` carry the best available value and an
    error bound when one exists.
    """

    def __init__(self, message, estimate=None, bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.bound = bound


class CapacityError(GammaPrimesError):
    """Requested size exceeds memory or exact-integer limits."""


class RangeError(GammaPrimesError, IndexError):
    """Query beyond the range covered by a precomputed table."""


class PreconditionError(GammaPrimesError):
    """A required input (e.g. zero table) is missing."""


class ZeroFileFormatError(GammaPrimesError, ValueError):
    """Malformed zeros file; ``lineno`` is 1-based."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class EmptyTableError(GammaPrimesError, ValueError):
    """Zero table would contain no ordinates."""
