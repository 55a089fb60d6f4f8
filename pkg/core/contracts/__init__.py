"""wshift data contracts: Pydantic v2 models for weighted shift analysis.

Inputs
------
- ``WeightSequence``: discriminated union of ``PeriodicWeights``,
  ``ModifiedPeriodicWeights``, ``SplitPeriodicWeights``, ``SampledWeights``

Certificates (calculated, never persisted)
------------------------------------------
- ``WindowStats`` / ``WindowWitness`` / ``EscapeWitness`` / ``RateMismatch``:
  the scaled window-product criterion
- ``SimilarityVerdict`` (``Similar`` | ``NotSimilar`` | ``Undecided``) and
  ``DiagonalSimilarity``
- ``FiniteModel``, ``SzNagyReport``, ``LemmaCheck``, ``PowerImage``: matrix
  oracles
- ``StabReport``: basis-vector Stab dichotomy
- ``AnalysisReport``: CLI document
"""

from core.contracts.enums import (
    EscapeDirection,
    ModelKind,
    NotSimilarReason,
    StabVerdict,
    VerdictKind,
)
from core.contracts.common import ContractModel
from core.contracts.weights import (
    EXACT_KINDS,
    ModifiedPeriodicWeights,
    PeriodicWeights,
    SampledWeights,
    SplitPeriodicWeights,
    WeightSequence,
)
from core.contracts.window import EscapeWitness, RateMismatch, WindowStats, WindowWitness
from core.contracts.similarity import (
    DiagonalSimilarity,
    NotSimilar,
    Similar,
    SimilarityVerdict,
    Undecided,
    VerdictSummary,
)
from core.contracts.finmodel import FiniteModel, LemmaCheck, PowerImage, SzNagyReport
from core.contracts.stab import StabReport
from core.contracts.report import AnalysisReport, NormTableParams

__all__ = [
    # Enums
    "EscapeDirection",
    "ModelKind",
    "NotSimilarReason",
    "StabVerdict",
    "VerdictKind",
    # Common
    "ContractModel",
    # Weights
    "EXACT_KINDS",
    "ModifiedPeriodicWeights",
    "PeriodicWeights",
    "SampledWeights",
    "SplitPeriodicWeights",
    "WeightSequence",
    # Window
    "EscapeWitness",
    "RateMismatch",
    "WindowStats",
    "WindowWitness",
    # Similarity
    "DiagonalSimilarity",
    "NotSimilar",
    "Similar",
    "SimilarityVerdict",
    "Undecided",
    "VerdictSummary",
    # Finite models
    "FiniteModel",
    "LemmaCheck",
    "PowerImage",
    "SzNagyReport",
    # Stab
    "StabReport",
    # Report
    "AnalysisReport",
    "NormTableParams",
]
