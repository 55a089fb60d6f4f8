"""Finite-dimensional realizations and oracle results.

- ``FiniteModel``: dense matrix of a truncated or cyclically wrapped shift,
  or of an arbitrary test operator.
- ``SzNagyReport``: power norms up to a horizon (heuristic, labelled so).
- ``LemmaCheck``: residual of the power-similarity identity.
- ``PowerImage``: ``S_w^n x`` for a finitely supported ``x``.
"""

from typing import Any, Self

import numpy as np
from pydantic import ConfigDict, Field, field_validator, model_validator

from core.contracts.common import ContractModel
from core.contracts.enums import ModelKind
from core.contracts.weights import WeightSequence


class FiniteModel(ContractModel):
    """Dense complex matrix with provenance.

    Truncation: basis indexed ``-N..N`` (row/column ``i`` is ``e_{i-N}``),
    entry ``(k+1, k) = w_k``.
    Wrap: dimension ``N``, entry ``((k+1) mod N, k) = w_{offset+k}``.
    The matrix is stored read-only.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: ModelKind
    entries: np.ndarray
    sequence: WeightSequence | None = None
    size: int | None = Field(default=None, ge=1, description="N of the construction")
    offset: int = 0

    @field_validator("entries", mode="before")
    @classmethod
    def as_square_complex(cls, v: Any) -> np.ndarray:
        arr = np.array(v, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"entries must be a non-empty square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_provenance(self) -> Self:
        if self.kind != ModelKind.GENERAL and (self.sequence is None or self.size is None):
            raise ValueError(f"{self.kind} models need their sequence and size")
        return self

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])


class SzNagyReport(ContractModel):
    """Forward/backward power norms up to a horizon.

    ``power_bounded_within_horizon`` is a horizon heuristic: it compares the
    observed maxima with ``threshold`` and proves nothing about larger n.
    """

    horizon: int = Field(..., ge=1)
    threshold: float = Field(..., gt=0)
    sup_fwd: float = Field(..., ge=0)
    sup_bwd: float = Field(..., ge=0)
    forward_norms: tuple[float, ...]
    backward_norms: tuple[float, ...]
    power_bounded_within_horizon: bool
    heuristic: bool = True


class LemmaCheck(ContractModel):
    """``||X A^n - B^n X||`` against the bound ``rtol * ||X|| * ||A||^n``."""

    n: int = Field(..., ge=1)
    residual: float = Field(..., ge=0)
    bound: float = Field(..., ge=0)
    holds: bool


class PowerImage(ContractModel):
    """Image coefficients of ``S_w^n x`` and its norm."""

    n: int = Field(..., ge=1)
    coefficients: dict[int, complex]
    norm: float = Field(..., ge=0)
