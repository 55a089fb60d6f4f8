"""Analysis-specific exceptions."""


class ShiftAnalysisError(Exception):
    """Base exception for all weighted-shift analysis errors."""


class SpecParseError(ShiftAnalysisError):
    """Raised when a sequence spec string does not follow the grammar."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position}: {text!r}")


class UnsupportedKindError(ShiftAnalysisError):
    """Raised when an exact-only operation receives a Sampled sequence."""

    def __init__(self, operation: str, kind: str):
        self.operation = operation
        self.kind = kind
        super().__init__(f"{operation} requires an exact sequence kind, got {kind!r}")


class ScalingMismatchError(ShiftAnalysisError):
    """Raised when a scaling constant differs from the unique feasible one."""

    def __init__(self, given: float, expected: float | None):
        self.given = given
        self.expected = expected
        super().__init__(f"c={given!r} is not the feasible scaling constant ({expected!r})")


class PreconditionError(ShiftAnalysisError):
    """Raised when an operation's precondition does not hold."""


class SingularMatrixError(PreconditionError):
    """Raised when a matrix that must be invertible is numerically singular."""


class DimensionMismatchError(ShiftAnalysisError):
    """Raised when matrix dimensions are incompatible or out of range."""


class PowerIterationStalledError(ShiftAnalysisError):
    """Raised when power iteration hits its cap without converging."""

    def __init__(self, iterations: int, estimate: float):
        self.iterations = iterations
        self.estimate = estimate
        super().__init__(
            f"power iteration did not converge after {iterations} steps "
            f"(last estimate {estimate!r})"
        )


class DichotomyViolationError(ShiftAnalysisError):
    """Raised when basis vectors of an exact sequence disagree on decay."""


class WindowUnderflowError(ShiftAnalysisError):
    """Raised when a window product underflows to zero."""
