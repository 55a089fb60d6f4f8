"""Queries on weight sequences: lookup, moduli, boundedness, normality, tails."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.config import Settings, get_settings
from core.contracts.weights import (
    ModifiedPeriodicWeights,
    PeriodicWeights,
    SampledWeights,
    SplitPeriodicWeights,
    WeightSequence,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailStructure:
    """Where the periodic laws of a sequence take over.

    Any run of indices ending before ``left_boundary`` follows the left law
    (period ``left_period``); any run starting at or after ``right_boundary``
    follows the right law (period ``right_period``).
    """

    left_boundary: int
    left_period: int
    right_boundary: int
    right_period: int

    @property
    def irregular_span(self) -> tuple[int, int]:
        """Smallest index range containing one period of each tail and the zone between."""
        return (
            self.left_boundary - self.left_period,
            self.right_boundary + self.right_period,
        )


def weight_at(seq: WeightSequence, k: int) -> complex:
    """Return ``w_k`` per the sequence's rule."""
    if isinstance(seq, PeriodicWeights):
        return seq.pattern[k % seq.period]
    if isinstance(seq, ModifiedPeriodicWeights):
        if k in seq.overrides:
            return seq.overrides[k]
        return weight_at(seq.base, k)
    if isinstance(seq, SplitPeriodicWeights):
        return weight_at(seq.left if k < seq.split_index else seq.right, k)
    if k < seq.k_min:
        return seq.left_extension
    if k > seq.k_max:
        return seq.right_extension
    return seq.values[k - seq.k_min]


def log_moduli(seq: WeightSequence, lo: int, hi: int) -> np.ndarray:
    """``log|w_k|`` for ``k`` in ``[lo, hi)``."""
    return np.array([math.log(abs(weight_at(seq, k))) for k in range(lo, hi)], dtype=float)


def _occurring_weights(seq: WeightSequence) -> list[complex]:
    """Every value the sequence takes (each appears at some index)."""
    if isinstance(seq, PeriodicWeights):
        return list(seq.pattern)
    if isinstance(seq, ModifiedPeriodicWeights):
        # Overrides are finite, so every base residue still occurs somewhere.
        return list(seq.base.pattern) + list(seq.overrides.values())
    if isinstance(seq, SplitPeriodicWeights):
        return list(seq.left.pattern) + list(seq.right.pattern)
    return [seq.left_extension, *seq.values, seq.right_extension]


def sup_modulus(seq: WeightSequence) -> float:
    return max(abs(w) for w in _occurring_weights(seq))


def inf_modulus(seq: WeightSequence) -> float:
    return min(abs(w) for w in _occurring_weights(seq))


def is_bounded(seq: WeightSequence) -> bool:
    """True iff ``sup_k |w_k| < inf``.

    Exact for every kind: the data is finite and the tails repeat.
    """
    return math.isfinite(sup_modulus(seq))


def is_normal_shift(seq: WeightSequence, settings: Settings | None = None) -> bool:
    """True iff all ``|w_k|`` are equal, i.e. ``S_w`` is normal."""
    rtol = (settings or get_settings()).normal_rtol
    moduli = [abs(w) for w in _occurring_weights(seq)]
    return all(math.isclose(m, moduli[0], rel_tol=rtol) for m in moduli)


def scale_weights(seq: WeightSequence, r: float) -> WeightSequence:
    """Return the same-kind sequence ``r * w``."""
    if not r > 0:
        raise ValueError(f"scale factor must be positive, got {r!r}")
    if isinstance(seq, PeriodicWeights):
        return PeriodicWeights(pattern=tuple(r * w for w in seq.pattern))
    if isinstance(seq, ModifiedPeriodicWeights):
        return ModifiedPeriodicWeights(
            base=scale_weights(seq.base, r),
            overrides={k: r * w for k, w in seq.overrides.items()},
        )
    if isinstance(seq, SplitPeriodicWeights):
        return SplitPeriodicWeights(
            left=scale_weights(seq.left, r),
            right=scale_weights(seq.right, r),
            split_index=seq.split_index,
        )
    return SampledWeights(
        k_min=seq.k_min,
        values=tuple(r * w for w in seq.values),
        left_extension=r * seq.left_extension,
        right_extension=r * seq.right_extension,
    )


def structural_period(seq: WeightSequence) -> int:
    """Period the wrap model must respect."""
    if isinstance(seq, PeriodicWeights):
        return seq.period
    if isinstance(seq, ModifiedPeriodicWeights):
        return seq.base.period
    if isinstance(seq, SplitPeriodicWeights):
        return math.lcm(seq.left.period, seq.right.period)
    return 1


def tail_structure(seq: WeightSequence) -> TailStructure:
    if isinstance(seq, PeriodicWeights):
        return TailStructure(0, seq.period, 0, seq.period)
    if isinstance(seq, ModifiedPeriodicWeights):
        p = seq.base.period
        if not seq.overrides:
            return TailStructure(0, p, 0, p)
        return TailStructure(min(seq.overrides), p, max(seq.overrides) + 1, p)
    if isinstance(seq, SplitPeriodicWeights):
        s = seq.split_index
        return TailStructure(s, seq.left.period, s, seq.right.period)
    return TailStructure(seq.k_min, 1, seq.k_max + 1, 1)


def tail_log_rates(seq: WeightSequence) -> tuple[float, float]:
    """Mean ``log|w|`` over one period of the left and of the right tail."""
    tails = tail_structure(seq)
    left = [
        math.log(abs(weight_at(seq, k)))
        for k in range(tails.left_boundary - tails.left_period, tails.left_boundary)
    ]
    right = [
        math.log(abs(weight_at(seq, k)))
        for k in range(tails.right_boundary, tails.right_boundary + tails.right_period)
    ]
    return math.fsum(left) / len(left), math.fsum(right) / len(right)
