"""Operator norms: power iteration, exact window formulas, Sz.-Nagy power norms."""

from __future__ import annotations

import logging
import math
import sys

import numpy as np

from core.config import Settings, get_settings
from core.contracts.finmodel import FiniteModel, SzNagyReport
from core.contracts.weights import ModifiedPeriodicWeights, WeightSequence
from core.errors import PowerIterationStalledError, SingularMatrixError
from core.services.finmodel.models import as_matrix
from core.services.weights import tail_structure
from core.services.window import log_window_product, scaled_window_value

logger = logging.getLogger(__name__)

_LOG_MAX = math.log(sys.float_info.max)


def operator_norm(m: FiniteModel | np.ndarray, settings: Settings | None = None) -> float:
    """Largest singular value by power iteration on ``M* M``.

    Starts from the normalized all-ones vector; when that lies in the kernel
    the unit vector of the heaviest column is used instead.
    """
    settings = settings or get_settings()
    a = as_matrix(m)
    if not a.any():
        return 0.0
    gram = a.conj().T @ a
    dim = a.shape[0]
    x = np.ones(dim, dtype=np.complex128) / math.sqrt(dim)
    if not np.any(a @ x):
        x = np.zeros(dim, dtype=np.complex128)
        x[int(np.argmax(np.linalg.norm(a, axis=0)))] = 1.0
        logger.debug("All-ones start lies in the kernel; restarting from a unit vector")

    estimate = 0.0
    for _ in range(settings.power_iteration_max):
        y = gram @ x
        rayleigh = max(float(np.vdot(x, y).real), 0.0)
        estimate = math.sqrt(rayleigh)
        # The Rayleigh quotient error is quadratic in this residual.
        if np.linalg.norm(y - rayleigh * x) <= settings.power_iteration_rtol * rayleigh:
            return estimate
        x = y / np.linalg.norm(y)
    logger.warning(
        "Power iteration stalled after %d steps (estimate %r)",
        settings.power_iteration_max,
        estimate,
    )
    raise PowerIterationStalledError(settings.power_iteration_max, estimate)


def _window_starts(seq: WeightSequence, n: int) -> list[int]:
    """Start indices ``k`` that realize every distinct window of length ``n``."""
    tails = tail_structure(seq)
    # First weight a = k + 1 ranges over L0 - n - p_L + 1 .. R0 + p_R - 1.
    lo = tails.left_boundary - n - tails.left_period
    if isinstance(seq, ModifiedPeriodicWeights) and seq.overrides:
        # A window missing every override repeats with the base period.
        starts = set(range(lo, tails.left_boundary - n))
        for k in seq.overrides:
            starts.update(range(k - n, k))
        return sorted(starts)
    return list(range(lo, tails.right_boundary + tails.right_period - 1))


def _extreme_start(seq: WeightSequence, n: int, largest: bool) -> int:
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    ks = _window_starts(seq, n)
    logs = [log_window_product(seq, k, n) for k in ks]
    pick = max if largest else min
    return ks[logs.index(pick(logs))]


def _check_scale(c: float) -> None:
    if not c > 0:
        raise ValueError(f"scaling constant must be positive, got {c!r}")


def power_norm_exact(seq: WeightSequence, n: int, c: float = 1.0) -> float:
    """``||(c S_w)^n|| = c^n sup_k P(k, n)``."""
    _check_scale(c)
    return scaled_window_value(seq, c, _extreme_start(seq, n, largest=True), n)


def inverse_power_norm_exact(seq: WeightSequence, n: int, c: float = 1.0) -> float:
    """``||(c S_w)^{-n}|| = c^{-n} sup_k 1 / P(k, n)``."""
    _check_scale(c)
    return 1.0 / scaled_window_value(seq, c, _extreme_start(seq, n, largest=False), n)


def _log_power_norms(a: np.ndarray, horizon: int) -> list[float]:
    """``log ||A^n||`` for ``n = 1..horizon``, renormalizing after every step."""
    logs = []
    total = 0.0
    p = np.eye(a.shape[0], dtype=np.complex128)
    for _ in range(horizon):
        p = a @ p
        s = float(np.linalg.norm(p, 2))
        total += math.log(s)
        logs.append(total)
        p /= s
    return logs


def _from_log(value: float) -> float:
    return math.inf if value > _LOG_MAX else math.exp(value)


def sznagy_check(
    m: FiniteModel | np.ndarray,
    horizon: int,
    threshold: float | None = None,
    settings: Settings | None = None,
) -> SzNagyReport:
    """Forward and backward power norms of an invertible matrix up to ``horizon``.

    The verdict only says whether both maxima stay below ``threshold``
    within the horizon.
    """
    settings = settings or get_settings()
    threshold = settings.sznagy_threshold if threshold is None else threshold
    a = as_matrix(m)
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[-1] <= settings.invertibility_rtol * sv[0]:
        raise SingularMatrixError(
            f"smallest singular value {sv[-1]!r} is negligible against {sv[0]!r}"
        )
    forward = tuple(_from_log(v) for v in _log_power_norms(a, horizon))
    backward = tuple(_from_log(v) for v in _log_power_norms(np.linalg.inv(a), horizon))
    sup_fwd, sup_bwd = max(forward), max(backward)
    bounded = sup_fwd <= threshold and sup_bwd <= threshold
    logger.debug(
        "Sz.-Nagy horizon=%d sup_fwd=%r sup_bwd=%r bounded=%s", horizon, sup_fwd, sup_bwd, bounded
    )
    return SzNagyReport(
        horizon=horizon,
        threshold=threshold,
        sup_fwd=sup_fwd,
        sup_bwd=sup_bwd,
        forward_norms=forward,
        backward_norms=backward,
        power_bounded_within_horizon=bounded,
    )


def normality_residual(m: FiniteModel | np.ndarray) -> float:
    """``||M M* - M* M||``; zero exactly for normal matrices."""
    a = as_matrix(m)
    ah = a.conj().T
    return float(np.linalg.norm(a @ ah - ah @ a, 2))
