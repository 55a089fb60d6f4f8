"""Finite-dimensional oracles for weighted shifts: models, norms, spectra, harnesses."""

from core.services.finmodel.harness import (
    apply_power,
    lemma1_harness,
    random_oracle_instance,
    random_power_bounded_instance,
)
from core.services.finmodel.models import (
    as_matrix,
    general_model,
    truncation_model,
    wrap_model,
)
from core.services.finmodel.norms import (
    inverse_power_norm_exact,
    normality_residual,
    operator_norm,
    power_norm_exact,
    sznagy_check,
)
from core.services.finmodel.spectrum import wrap_spectrum

__all__ = [
    "apply_power",
    "as_matrix",
    "general_model",
    "inverse_power_norm_exact",
    "lemma1_harness",
    "normality_residual",
    "operator_norm",
    "power_norm_exact",
    "random_oracle_instance",
    "random_power_bounded_instance",
    "sznagy_check",
    "truncation_model",
    "wrap_model",
    "wrap_spectrum",
]
