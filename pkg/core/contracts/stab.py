"""Stability manifold report: which basis vectors satisfy ``||T^n e_k|| -> 0``."""

from typing import Self

from pydantic import Field, model_validator

from core.contracts.common import ContractModel
from core.contracts.enums import StabVerdict


class StabReport(ContractModel):
    """Basis-vector form of the Stab dichotomy.

    Exact kinds decide decay from the asymptotic rate of the right tail
    (``rigorous = True``); sampled sequences use a horizon trend heuristic.
    """

    verdict: StabVerdict
    per_basis_decay: dict[int, bool]
    observed_rates: dict[int, float] = Field(
        default_factory=dict, description="n-th root of the profile at the horizon, per index"
    )
    asymptotic_rate: float | None = Field(default=None, gt=0)
    horizon: int = Field(..., ge=1)
    rigorous: bool

    @model_validator(mode="after")
    def validate_verdict(self) -> Self:
        flags = set(self.per_basis_decay.values())
        if not flags:
            raise ValueError("per_basis_decay must cover at least one index")
        if len(flags) > 1:
            expected = StabVerdict.MIXED_VIOLATION
        elif flags == {True}:
            expected = StabVerdict.DENSE
        else:
            expected = StabVerdict.ZERO
        if self.verdict != expected:
            raise ValueError(f"verdict {self.verdict!r} inconsistent with per-index decay")
        return self
