"""Enumerations shared across all wshift contracts."""

from enum import Enum


class VerdictKind(str, Enum):
    """Outcome of the similarity decision."""
    SIMILAR = "similar"
    NOT_SIMILAR = "not-similar"
    UNDECIDED = "undecided"


class NotSimilarReason(str, Enum):
    RATE_MISMATCH = "rate-mismatch"  # left and right geometric means differ
    WINDOW_ESCAPE = "window-escape"


class EscapeDirection(str, Enum):
    """Which scaled-window bound diverges."""
    SUP = "sup"
    INF = "inf"


class ModelKind(str, Enum):
    """Finite-dimensional realization of an operator."""
    TRUNCATION = "truncation"
    WRAP = "wrap"
    GENERAL = "general"


class StabVerdict(str, Enum):
    """Shape of the stability manifold on the standard basis."""
    ZERO = "zero"
    DENSE = "dense"
    MIXED_VIOLATION = "mixed-violation"
