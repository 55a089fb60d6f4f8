"""Decision procedure and diagonal certificate for similarity to a normal operator.

``S_w`` is similar to a normal operator iff some ``c > 0`` keeps every scaled
window ``c^n P(k, n)`` inside a compact subset of ``(0, inf)``. That ``c`` is
unique, and ``X = diag(d_k)`` with ``d_{k+1} = d_k / (c w_k)`` conjugates
``S_w`` to ``(1/c) S``.
"""

from __future__ import annotations

import cmath
import logging
import math

import numpy as np

from core.config import Settings, get_settings
from core.contracts.enums import EscapeDirection, NotSimilarReason
from core.contracts.similarity import (
    DiagonalSimilarity,
    NotSimilar,
    Similar,
    SimilarityVerdict,
    Undecided,
)
from core.contracts.weights import EXACT_KINDS, PeriodicWeights, WeightSequence
from core.contracts.window import EscapeWitness, RateMismatch
from core.errors import DimensionMismatchError, ScalingMismatchError, UnsupportedKindError
from core.services.finmodel.models import truncation_model
from core.services.weights import tail_log_rates, tail_structure, weight_at
from core.services.window import (
    candidate_c,
    compensated_prefix,
    escape_witness,
    join_summaries,
    prefix_summary,
    scaled_window_stats,
)

logger = logging.getLogger(__name__)

# Smallest truncation size accepted by verify_similarity
_MIN_CERTIFY_SIZE = 4


def decide_similarity(
    seq: WeightSequence,
    *,
    horizon: int | None = None,
    settings: Settings | None = None,
) -> SimilarityVerdict:
    """Decide whether ``S_w`` is similar to a normal operator.

    Exact kinds always get ``Similar`` or ``NotSimilar``. Sampled sequences
    are ``NotSimilar`` only when their extensions grow at different rates;
    otherwise the horizon scan is reported as ``Undecided``.
    """
    settings = settings or get_settings()
    if seq.kind not in EXACT_KINDS:
        return _decide_sampled(seq, horizon or settings.sampled_horizon, settings)

    c = candidate_c(seq, settings)
    if isinstance(c, RateMismatch):
        return NotSimilar(
            reason=NotSimilarReason.RATE_MISMATCH,
            witness=_mismatch_witness(seq, c, settings),
            mismatch=c,
        )

    stats = scaled_window_stats(seq, c, settings=settings)
    if not stats.feasible:
        # Unreachable for exact kinds: the candidate zeroes both drifts.
        escape = stats.sup_escape or stats.inf_escape
        assert escape is not None
        return NotSimilar(reason=NotSimilarReason.WINDOW_ESCAPE, witness=escape)

    diag = _diagonal(seq, c)
    kappa = max(stats.sup_scaled, 1.0 / stats.inf_scaled, 1.0)
    logger.debug("Similar: c=%r kappa=%r", c, kappa)
    return Similar(c=c, kappa=kappa, diag=diag, stats=stats)


def _mismatch_witness(
    seq: WeightSequence, mismatch: RateMismatch, settings: Settings
) -> EscapeWitness:
    """Escape at the constant that balances one tail; the other tail runs off."""
    for rate in (mismatch.left_rate, mismatch.right_rate):
        stats = scaled_window_stats(seq, 1.0 / rate, settings=settings)
        escape = stats.sup_escape or stats.inf_escape
        if escape is not None:
            logger.debug("Rate mismatch witness at c=%r: %s", stats.c, escape.direction)
            return escape
    raise AssertionError(f"no escape witness for {mismatch!r}")


def _decide_sampled(seq: WeightSequence, horizon: int, settings: Settings) -> SimilarityVerdict:
    left_log, right_log = tail_log_rates(seq)
    left_rate, right_rate = math.exp(left_log), math.exp(right_log)
    if not math.isclose(left_rate, right_rate, rel_tol=settings.rate_rtol):
        # Constant extensions: the right tail drifts against c = 1/left_rate.
        direction = EscapeDirection.SUP if right_log > left_log else EscapeDirection.INF
        witness = escape_witness(
            seq, 1.0 / left_rate, direction, tail_structure(seq), use_right=True
        )
        return NotSimilar(
            reason=NotSimilarReason.RATE_MISMATCH,
            witness=witness,
            mismatch=RateMismatch(left_rate=left_rate, right_rate=right_rate),
        )
    stats = scaled_window_stats(seq, 1.0 / right_rate, horizon=horizon, settings=settings)
    logger.debug(
        "Sampled sequence undecided at horizon %d (sup=%r, inf=%r)",
        horizon,
        stats.sup_scaled,
        stats.inf_scaled,
    )
    return Undecided(horizon=horizon, stats=stats)


def _diagonal(seq: WeightSequence, c: float) -> DiagonalSimilarity:
    """Certificate diagonal with its extreme moduli.

    ``log|d_k| = -(H(k) - H(0))``; its extremes sit in the same box as the
    extreme windows, extended to contain 0.
    """
    tails = tail_structure(seq)
    lo = min(tails.left_boundary - 2 * tails.left_period, 0)
    hi = max(tails.right_boundary + 2 * tails.right_period, 0)
    left = prefix_summary(seq, c, lo, 0) if lo < 0 else None
    right = prefix_summary(seq, c, 0, hi) if hi > 0 else None
    if left is None or right is None:
        whole = left or right
        assert whole is not None
    else:
        whole = join_summaries(left, right)
    h0 = 0.0 if left is None else left.total
    return DiagonalSimilarity(
        c=c,
        generator=seq,
        sup_mod=math.exp(h0 - whole.low[0]),
        inf_mod=math.exp(h0 - whole.high[0]),
        sup_index=lo + whole.low[1],
        inf_index=lo + whole.high[1],
    )


def build_similarity(
    seq: WeightSequence, c: float, settings: Settings | None = None
) -> DiagonalSimilarity:
    """Diagonal similarity for the unique feasible ``c``."""
    settings = settings or get_settings()
    if seq.kind not in EXACT_KINDS:
        raise UnsupportedKindError("build_similarity", seq.kind)
    expected = candidate_c(seq, settings)
    if isinstance(expected, RateMismatch):
        raise ScalingMismatchError(c, None)
    if not math.isclose(c, expected, rel_tol=settings.rate_rtol):
        raise ScalingMismatchError(c, expected)
    return _diagonal(seq, c)


def _log_and_phase(diag: DiagonalSimilarity, ks: range) -> tuple[list[float], list[float]]:
    """Signed sums of ``log(c |g_i|)`` and ``arg g_i`` over ``ks``."""
    log_c = math.log(diag.c)
    weights = [weight_at(diag.generator, k) for k in ks]
    logs = compensated_prefix(math.log(abs(w)) + log_c for w in weights)
    phases = compensated_prefix(cmath.phase(w) for w in weights)
    return logs, phases


def diagonal_entry(diag: DiagonalSimilarity, k: int) -> complex:
    """``d_k`` in closed form (``d_0 = 1``)."""
    if k >= 0:
        logs, phases = _log_and_phase(diag, range(k))
        return cmath.rect(math.exp(-logs[-1]), -phases[-1])
    logs, phases = _log_and_phase(diag, range(k, 0))
    return cmath.rect(math.exp(logs[-1]), phases[-1])


def diagonal_entries(diag: DiagonalSimilarity, lo: int, hi: int) -> np.ndarray:
    """``d_k`` for ``k`` in ``[lo, hi)``."""
    if hi <= lo:
        return np.empty(0, dtype=np.complex128)
    out = np.empty(hi - lo, dtype=np.complex128)
    if hi > 0:
        start = max(lo, 0)
        logs, phases = _log_and_phase(diag, range(hi))
        for k in range(start, hi):
            out[k - lo] = cmath.rect(math.exp(-logs[k]), -phases[k])
    if lo < 0:
        stop = min(hi, 0)
        # Walk left from 0: entry m of the prefix covers indices -m .. -1.
        logs, phases = _log_and_phase(diag, range(-1, lo - 1, -1))
        for k in range(lo, stop):
            out[k - lo] = cmath.rect(math.exp(logs[-k]), phases[-k])
    return out


def verify_similarity(
    seq: WeightSequence,
    diag: DiagonalSimilarity,
    size: int,
    settings: Settings | None = None,
) -> float:
    """Largest singular value of ``X S_w - (1/c) S X`` on the interior columns.

    Both shifts are truncated to ``span{e_{-size}, ..., e_size}``; the last
    column is dropped because truncation cuts its image.
    """
    settings = settings or get_settings()
    if size < _MIN_CERTIFY_SIZE:
        raise DimensionMismatchError(
            f"certificate check needs size >= {_MIN_CERTIFY_SIZE}, got {size}"
        )
    sw = truncation_model(seq, size, settings).entries
    s = truncation_model(PeriodicWeights(pattern=(1,)), size, settings).entries
    x = np.diag(diagonal_entries(diag, -size, size + 1))
    residual = x @ sw - (1.0 / diag.c) * (s @ x)
    value = float(np.linalg.norm(residual[:, :-1], 2))
    logger.debug("Certificate residual at size %d: %r", size, value)
    return value
