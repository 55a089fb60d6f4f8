"""Stab dichotomy: which vectors are driven to zero by the powers of an operator.

For a weighted shift ``||S_w^n e_k|| = |w_k| ... |w_{k+n-1}|``, so decay of a
basis vector is governed by the right tail alone and every ``e_k`` behaves
the same way: ``Stab`` is either ``{0}`` or dense.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from core.config import Settings, get_settings
from core.contracts.enums import StabVerdict
from core.contracts.similarity import Similar
from core.contracts.stab import StabReport
from core.contracts.weights import EXACT_KINDS, WeightSequence
from core.errors import DichotomyViolationError, DimensionMismatchError, PreconditionError
from core.services.similarity import decide_similarity
from core.services.weights import (
    TailStructure,
    scale_weights,
    tail_log_rates,
    tail_structure,
    weight_at,
)
from core.services.window import compensated_prefix, log_window_product

logger = logging.getLogger(__name__)

_DEFAULT_K_RANGE = range(-5, 6)


def stab_normal_diag(lambdas: Sequence[complex], x: Sequence[complex]) -> bool:
    """True iff ``x`` lies in Stab of the diagonal operator ``diag(lambdas)``.

    ``||D^n x||^2 = sum |x_i|^2 |lambda_i|^(2n)`` tends to zero exactly when
    ``x`` vanishes on every eigenvalue of modulus ``>= 1``.
    """
    if len(lambdas) != len(x):
        raise DimensionMismatchError(
            f"{len(lambdas)} eigenvalues but {len(x)} coordinates"
        )
    return all(xi == 0 for lam, xi in zip(lambdas, x) if abs(lam) >= 1)


def basis_decay_profile(seq: WeightSequence, k: int, horizon: int) -> np.ndarray:
    """``||S_w^n e_k||`` for ``n = 1..horizon`` (overflow reads as ``inf``)."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    logs = compensated_prefix(math.log(abs(weight_at(seq, k + j))) for j in range(horizon))
    with np.errstate(over="ignore"):
        return np.exp(np.array(logs[1:]))


def _trend_decays(profile: np.ndarray, floor: float) -> bool:
    """Sampled heuristic: ends below ``floor`` and still falling over the second half."""
    return bool(profile[-1] < floor and profile[-1] < profile[len(profile) // 2])


def _orbit_decays(seq: WeightSequence, k: int, tails: TailStructure, rtol: float) -> bool:
    """Decay of ``e_k`` read from its own orbit.

    Once ``S_w^m e_k`` sits at or beyond ``R0`` on ``k``'s residue class,
    ``||S_w^(m+p) e_k|| / ||S_w^m e_k||`` is the product of the next ``p``
    moduli and repeats forever. The orbit decays iff that factor is below 1;
    a factor of 1 keeps it bounded below.
    """
    p = tails.right_period
    start = k + p * max(0, -((k - tails.right_boundary) // p))
    drift = log_window_product(seq, start - 1, p)
    return drift < -rtol * p


def dichotomy_check(
    seq: WeightSequence,
    k_range: Sequence[int] | None = None,
    horizon: int | None = None,
    settings: Settings | None = None,
) -> StabReport:
    """Classify ``Stab(S_w)`` from the basis vectors ``e_k``, ``k`` in ``k_range``.

    Exact kinds judge every ``e_k`` from the period factor of its own orbit
    and must find them all alike; disagreement raises
    ``DichotomyViolationError``. ``asymptotic_rate`` is the geometric mean of
    the right-tail moduli. Sampled sequences fall back to a horizon trend and
    are marked non-rigorous.
    """
    settings = settings or get_settings()
    ks = list(_DEFAULT_K_RANGE if k_range is None else k_range)
    if not ks:
        raise ValueError("k_range must not be empty")
    horizon = horizon or settings.sampled_horizon

    profiles = {k: basis_decay_profile(seq, k, horizon) for k in ks}
    observed = {
        k: math.exp(math.log(p[-1]) / horizon) if 0 < p[-1] < math.inf else float(p[-1])
        for k, p in profiles.items()
    }

    rigorous = seq.kind in EXACT_KINDS
    asymptotic_rate: float | None = None
    if rigorous:
        asymptotic_rate = math.exp(tail_log_rates(seq)[1])
        tails = tail_structure(seq)
        per_basis = {k: _orbit_decays(seq, k, tails, settings.rate_rtol) for k in ks}
    else:
        per_basis = {k: _trend_decays(p, settings.decay_floor) for k, p in profiles.items()}

    flags = set(per_basis.values())
    if len(flags) > 1:
        if rigorous:
            raise DichotomyViolationError(f"basis vectors disagree on decay: {per_basis}")
        logger.warning("Sampled sequence shows mixed decay within horizon %d", horizon)
        verdict = StabVerdict.MIXED_VIOLATION
    elif flags == {True}:
        verdict = StabVerdict.DENSE
    else:
        verdict = StabVerdict.ZERO

    return StabReport(
        verdict=verdict,
        per_basis_decay=per_basis,
        observed_rates=observed,
        asymptotic_rate=asymptotic_rate,
        horizon=horizon,
        rigorous=rigorous,
    )


def stab_similarity_consistency(
    seq: WeightSequence, settings: Settings | None = None
) -> bool:
    """Cross-check Stab against the spectrum radius ``1/c``.

    ``r S_w`` is similar to ``(r/c) S``, so Stab is dense exactly when
    ``r < c``. Checked at ``r`` in ``{c/2, c, 2c}``.
    """
    settings = settings or get_settings()
    verdict = decide_similarity(seq, settings=settings)
    if not isinstance(verdict, Similar):
        raise PreconditionError(f"sequence is not similar to a normal operator ({verdict.verdict})")
    c = verdict.c
    for r in (c / 2, c, 2 * c):
        report = dichotomy_check(scale_weights(seq, r), settings=settings)
        dense = report.verdict == StabVerdict.DENSE
        if dense != (r < c):
            logger.warning("Stab verdict %s at r=%r contradicts c=%r", report.verdict, r, c)
            return False
    return True
