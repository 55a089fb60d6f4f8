"""Window statistics: certificates for the scaled window-product criterion.

A window ``(k, n)`` stands for ``P(k, n) = |w_{k+1}| ... |w_{k+n}|``; its
scaled value at constant ``c`` is ``c^n * P(k, n)``. The sequence is similar
to a normal operator exactly when some ``c`` keeps all scaled values inside
a compact subset of ``(0, inf)``.

Calculated (never persisted): every model here is produced by
``core.services.window``.
"""

import math
from typing import Self

from pydantic import Field, model_validator

from core.contracts.common import ContractModel
from core.contracts.enums import EscapeDirection

_ROUNDING_RTOL = 1e-12


class WindowWitness(ContractModel):
    """A concrete window attaining (or illustrating) a bound.

    ``value`` is reproducible by direct multiplication of weight moduli.
    """

    k: int
    n: int = Field(..., ge=1)
    value: float = Field(..., gt=0)


class EscapeWitness(ContractModel):
    """Three windows on one residue class whose scaled values run off.

    ``direction == "sup"``: strictly increasing values (sup is infinite).
    ``direction == "inf"``: strictly decreasing values (inf is zero).
    """

    c: float = Field(..., gt=0)
    direction: EscapeDirection
    windows: tuple[WindowWitness, ...] = Field(..., min_length=3, max_length=3)

    @model_validator(mode="after")
    def validate_monotone(self) -> Self:
        values = [w.value for w in self.windows]
        if self.direction == EscapeDirection.SUP:
            ok = values[0] < values[1] < values[2]
        else:
            ok = values[0] > values[1] > values[2]
        if not ok:
            raise ValueError(f"escape windows are not strictly monotone: {values}")
        return self


class RateMismatch(ContractModel):
    """No scaling constant exists: the two tails grow at different rates."""

    left_rate: float = Field(..., gt=0, description="Geometric mean of the left tail")
    right_rate: float = Field(..., gt=0, description="Geometric mean of the right tail")


class WindowStats(ContractModel):
    """Sup and inf of ``c^n * P(k, n)`` over all windows.

    ``sup_scaled`` is ``math.inf`` and ``inf_scaled`` is ``0.0`` when the
    corresponding bound diverges; the matching ``*_escape`` field then
    carries the evidence. With ``exact = False`` the bounds only cover
    windows inside ``[-horizon, horizon]``.
    """

    c: float = Field(..., gt=0)
    sup_scaled: float = Field(..., gt=0)
    inf_scaled: float = Field(..., ge=0)
    exact: bool
    horizon: int | None = Field(default=None, ge=1)
    sup_witness: WindowWitness | None = None
    inf_witness: WindowWitness | None = None
    sup_escape: EscapeWitness | None = None
    inf_escape: EscapeWitness | None = None

    @model_validator(mode="after")
    def validate_bounds(self) -> Self:
        # Witness values are direct products; allow for their rounding.
        if self.inf_scaled > self.sup_scaled * (1 + _ROUNDING_RTOL):
            raise ValueError(
                f"inf_scaled ({self.inf_scaled}) exceeds sup_scaled ({self.sup_scaled})"
            )
        if self.exact:
            if self.sup_bounded and self.sup_witness is None:
                raise ValueError("exact stats need a witness for a finite sup")
            if self.inf_positive and self.inf_witness is None:
                raise ValueError("exact stats need a witness for a positive inf")
        elif self.horizon is None:
            raise ValueError("horizon is required when exact is False")
        return self

    @property
    def sup_bounded(self) -> bool:
        return math.isfinite(self.sup_scaled)

    @property
    def inf_positive(self) -> bool:
        return self.inf_scaled > 0

    @property
    def feasible(self) -> bool:
        """True when both bounds of the criterion hold at this ``c``."""
        return self.sup_bounded and self.inf_positive
