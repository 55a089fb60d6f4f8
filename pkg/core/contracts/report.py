"""AnalysisReport: the document printed by ``wshift analyze``.

**Calculated, never persisted.** Aggregates the similarity verdict with the
boundedness/normality flags and the spectrum radius ``1/c``.
"""

from typing import Self

from pydantic import Field, model_validator

from core.contracts.common import ContractModel
from core.contracts.enums import VerdictKind
from core.contracts.similarity import VerdictSummary


class NormTableParams(ContractModel):
    """Parameters for a follow-up ``wshift norms`` invocation."""

    n_max: int = Field(..., ge=1)
    c: float = Field(..., gt=0)


class AnalysisReport(ContractModel):
    spec: str = Field(..., min_length=1, description="Sequence spec as given")
    verdict: VerdictSummary
    normal: bool
    bounded: bool
    spectrum_radius: float | None = Field(
        default=None, gt=0, description="Radius 1/c of the spectrum circle"
    )
    norm_table: NormTableParams

    @model_validator(mode="after")
    def validate_radius(self) -> Self:
        similar = self.verdict.verdict == VerdictKind.SIMILAR.value
        if similar != (self.spectrum_radius is not None):
            raise ValueError("spectrum_radius must be present exactly for similar verdicts")
        return self
