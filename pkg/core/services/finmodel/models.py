"""Dense matrix realizations of a weighted shift."""

from __future__ import annotations

import logging

import numpy as np

from core.config import Settings, get_settings
from core.contracts.enums import ModelKind
from core.contracts.finmodel import FiniteModel
from core.contracts.weights import WeightSequence
from core.errors import DimensionMismatchError
from core.services.weights import structural_period, weight_at

logger = logging.getLogger(__name__)


def _check_dim(dim: int, settings: Settings | None) -> None:
    max_dim = (settings or get_settings()).max_dim
    if dim > max_dim:
        raise DimensionMismatchError(f"dimension {dim} exceeds max_dim={max_dim}")


def as_matrix(m: FiniteModel | np.ndarray) -> np.ndarray:
    """Complex square array behind a model (or an already dense matrix)."""
    if isinstance(m, FiniteModel):
        return m.entries
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def truncation_model(
    seq: WeightSequence, size: int, settings: Settings | None = None
) -> FiniteModel:
    """Compression of ``S_w`` to ``span{e_{-size}, ..., e_size}``.

    Row/column ``i`` stands for ``e_{i-size}``; the last column is zero.
    """
    if size < 1:
        raise DimensionMismatchError(f"truncation size must be >= 1, got {size}")
    dim = 2 * size + 1
    _check_dim(dim, settings)
    entries = np.zeros((dim, dim), dtype=np.complex128)
    cols = np.arange(dim - 1)
    entries[cols + 1, cols] = [weight_at(seq, int(i) - size) for i in cols]
    return FiniteModel(kind=ModelKind.TRUNCATION, entries=entries, sequence=seq, size=size)


def wrap_model(
    seq: WeightSequence,
    size: int,
    offset: int = 0,
    settings: Settings | None = None,
) -> FiniteModel:
    """Cyclic model: entry ``((k+1) mod size, k) = w_{offset+k}``.

    ``size`` must be a multiple of the structural period so that a wrap
    placed in a periodic tail repeats the tail exactly.
    """
    period = structural_period(seq)
    if size < 1 or size % period:
        raise DimensionMismatchError(
            f"wrap size {size} is not a positive multiple of the period {period}"
        )
    _check_dim(size, settings)
    entries = np.zeros((size, size), dtype=np.complex128)
    cols = np.arange(size)
    entries[(cols + 1) % size, cols] = [weight_at(seq, offset + int(k)) for k in cols]
    logger.debug("Wrap model size=%d offset=%d period=%d", size, offset, period)
    return FiniteModel(
        kind=ModelKind.WRAP, entries=entries, sequence=seq, size=size, offset=offset
    )


def general_model(entries: np.ndarray, settings: Settings | None = None) -> FiniteModel:
    """Wrap an arbitrary square matrix (oracle instances, conjugated models)."""
    model = FiniteModel(kind=ModelKind.GENERAL, entries=entries)
    _check_dim(model.dim, settings)
    return model
