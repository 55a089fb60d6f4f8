"""Weight sequences: exact models of doubly-infinite nonzero weights.

Four closed classes are supported. For the first three every supremum and
infimum over an infinite index set reduces to a finite computation; the
``sampled`` class is analysed in a horizon-limited approximate mode.

- ``PeriodicWeights``: ``w_k = pattern[k mod p]``
- ``ModifiedPeriodicWeights``: a periodic base with finitely many overrides
- ``SplitPeriodicWeights``: one periodic law left of ``split_index``,
  another from ``split_index`` on
- ``SampledWeights``: a finite table with constant extensions on both sides

Zero weights are rejected at construction: the shift must be injective.
"""

import cmath
from typing import Annotated, Any, Literal, Union

from pydantic import Field, field_validator, model_validator

from core.contracts.common import ContractModel


def _check_weight(w: complex) -> complex:
    if w == 0:
        raise ValueError("weights must be nonzero (the shift must be injective)")
    if not cmath.isfinite(w):
        raise ValueError(f"weights must be finite, got {w!r}")
    return w


class PeriodicWeights(ContractModel):
    """A p-periodic sequence anchored at index 0."""

    kind: Literal["periodic"] = "periodic"
    pattern: tuple[complex, ...] = Field(..., min_length=1)

    @field_validator("pattern")
    @classmethod
    def nonzero_pattern(cls, v: tuple[complex, ...]) -> tuple[complex, ...]:
        return tuple(_check_weight(w) for w in v)

    @property
    def period(self) -> int:
        return len(self.pattern)


class ModifiedPeriodicWeights(ContractModel):
    """A periodic base with a finite set of overridden weights."""

    kind: Literal["modified"] = "modified"
    base: PeriodicWeights
    overrides: dict[int, complex] = Field(default_factory=dict)

    @field_validator("overrides")
    @classmethod
    def nonzero_overrides(cls, v: dict[int, complex]) -> dict[int, complex]:
        return {k: _check_weight(w) for k, w in sorted(v.items())}


class SplitPeriodicWeights(ContractModel):
    """Left law for ``k < split_index``, right law for ``k >= split_index``.

    Both patterns are indexed by the absolute position ``k``.
    """

    kind: Literal["split"] = "split"
    left: PeriodicWeights
    right: PeriodicWeights
    split_index: int = 0


class SampledWeights(ContractModel):
    """Finite table over ``[k_min, k_max]`` with constant extensions.

    Missing extensions default to the end-point values (clamp rule).
    """

    kind: Literal["sampled"] = "sampled"
    k_min: int
    values: tuple[complex, ...] = Field(..., min_length=1)
    left_extension: complex
    right_extension: complex

    @model_validator(mode="before")
    @classmethod
    def default_extensions(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("values"):
            data = dict(data)
            values = list(data["values"])
            if data.get("left_extension") is None:
                data["left_extension"] = values[0]
            if data.get("right_extension") is None:
                data["right_extension"] = values[-1]
        return data

    @field_validator("values")
    @classmethod
    def nonzero_values(cls, v: tuple[complex, ...]) -> tuple[complex, ...]:
        return tuple(_check_weight(w) for w in v)

    @field_validator("left_extension", "right_extension")
    @classmethod
    def nonzero_extension(cls, v: complex) -> complex:
        return _check_weight(v)

    @property
    def k_max(self) -> int:
        return self.k_min + len(self.values) - 1


WeightSequence = Annotated[
    Union[PeriodicWeights, ModifiedPeriodicWeights, SplitPeriodicWeights, SampledWeights],
    Field(discriminator="kind"),
]

EXACT_KINDS = frozenset({"periodic", "modified", "split"})
