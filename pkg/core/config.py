"""Numerical settings shared by all services.

Every tolerance, iteration cap and threshold lives here so that a single
object documents the assumptions behind a verdict. Defaults can be
overridden through ``WSHIFT_<FIELD>`` environment variables, e.g.
``WSHIFT_SZNAGY_THRESHOLD=1e8``.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "WSHIFT_"


class Settings(BaseModel):
    """Tolerances and caps for the decision procedures and oracles."""

    model_config = ConfigDict(frozen=True)

    rate_rtol: float = Field(
        default=1e-12, gt=0, description="Relative tolerance for geometric-mean rate equality"
    )
    normal_rtol: float = Field(
        default=1e-12, gt=0, description="Relative tolerance for constant-modulus tests"
    )
    power_iteration_max: int = Field(default=10_000, ge=1)
    power_iteration_rtol: float = Field(default=1e-10, gt=0)
    sznagy_threshold: float = Field(
        default=1e6, gt=0, description="Power-norm bound used by the horizon heuristic"
    )
    sampled_horizon: int = Field(default=200, ge=1)
    max_dim: int = Field(default=4096, ge=1)
    invertibility_rtol: float = Field(default=1e-12, gt=0)
    lemma_precondition_rtol: float = Field(default=1e-12, gt=0)
    lemma_postcondition_rtol: float = Field(default=1e-8, gt=0)
    norm_table_n_max: int = Field(default=12, ge=1)
    decay_floor: float = Field(
        default=1e-6, gt=0, description="Sampled-mode level below which a profile counts as decayed"
    )

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> Settings:
        """Build settings from ``WSHIFT_*`` variables, falling back to defaults."""
        env = os.environ if environ is None else environ
        overrides: dict[str, Any] = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if key in env:
                overrides[name] = env[key]
                logger.debug("Setting %s overridden from %s", name, key)
        return cls.model_validate(overrides)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings (read once from the environment)."""
    return Settings.from_env()
