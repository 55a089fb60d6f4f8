"""Similarity verdicts and the diagonal similarity certificate.

``Similar`` carries the unique scaling constant ``c`` and the diagonal
operator ``X = diag(d_k)`` with ``X S_w X^{-1} = (1/c) S``.
``NotSimilar`` carries an escape witness. ``Undecided`` only arises for
sampled sequences analysed up to a horizon.
"""

from typing import Annotated, Literal, Self, Union

from pydantic import Field, model_validator

from core.contracts.common import ContractModel
from core.contracts.enums import NotSimilarReason
from core.contracts.weights import WeightSequence
from core.contracts.window import EscapeWitness, RateMismatch, WindowStats


class DiagonalSimilarity(ContractModel):
    """Closed-form generator of the diagonal entries ``d_k``.

    ``d_0 = 1`` and ``d_{k+1} = d_k / (c * generator_k)`` in both directions.
    For a certificate the generator is the analysed sequence itself; any other
    generator describes a different diagonal (useful to test the verifier).
    """

    c: float = Field(..., gt=0)
    generator: WeightSequence
    sup_mod: float = Field(..., gt=0, description="sup_k |d_k|")
    inf_mod: float = Field(..., gt=0, description="inf_k |d_k|")
    sup_index: int = Field(default=0, description="An index attaining sup_mod")
    inf_index: int = Field(default=0, description="An index attaining inf_mod")

    @model_validator(mode="after")
    def validate_moduli(self) -> Self:
        if self.inf_mod > self.sup_mod:
            raise ValueError(f"inf_mod ({self.inf_mod}) exceeds sup_mod ({self.sup_mod})")
        return self

    @property
    def kappa(self) -> float:
        """Condition number ``||X|| * ||X^{-1}||``."""
        return self.sup_mod / self.inf_mod


class VerdictSummary(ContractModel):
    """Stable JSON shape shared by all verdicts."""

    verdict: Literal["similar", "not-similar", "undecided"]
    c: float | None = None
    kappa: float | None = None
    witness: EscapeWitness | None = None
    reason: NotSimilarReason | None = None
    horizon: int | None = None


class Similar(ContractModel):
    verdict: Literal["similar"] = "similar"
    c: float = Field(..., gt=0)
    kappa: float = Field(..., ge=1)
    diag: DiagonalSimilarity
    stats: WindowStats

    def summary(self) -> VerdictSummary:
        return VerdictSummary(verdict=self.verdict, c=self.c, kappa=self.kappa)


class NotSimilar(ContractModel):
    verdict: Literal["not-similar"] = "not-similar"
    reason: NotSimilarReason
    witness: EscapeWitness
    mismatch: RateMismatch | None = None

    def summary(self) -> VerdictSummary:
        return VerdictSummary(verdict=self.verdict, witness=self.witness, reason=self.reason)


class Undecided(ContractModel):
    verdict: Literal["undecided"] = "undecided"
    horizon: int = Field(..., ge=1)
    stats: WindowStats

    def summary(self) -> VerdictSummary:
        return VerdictSummary(verdict=self.verdict, horizon=self.horizon)


SimilarityVerdict = Annotated[
    Union[Similar, NotSimilar, Undecided],
    Field(discriminator="verdict"),
]
