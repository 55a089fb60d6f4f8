"""Window products and the scaled window statistics of the similarity criterion.

Notation: ``P(k, n) = |w_{k+1}| ... |w_{k+n}|`` and, for a scaling constant
``c``, ``g_i = log|w_i| + log c`` with prefix function ``H`` so that
``c^n P(k, n) = exp(H(k+n+1) - H(k+1))``. Sup/inf over all windows become
the largest rise and the largest fall of ``H``.

For exact kinds ``H`` is eventually periodic on both sides up to a linear
drift per period. Non-positive drifts on both tails keep the sup finite,
non-negative drifts keep the inf positive, and the finite extrema are then
attained on the box ``[L0 - 2 p_L, R0 + 2 p_R]`` (see
``docs/DESIGN-window-reduction.md``). Inside the box, long runs of one
periodic law are summarized by doubling instead of being walked.
"""

from __future__ import annotations

import logging
import math
import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import reduce
from operator import itemgetter

from core.config import Settings, get_settings
from core.contracts.enums import EscapeDirection
from core.contracts.weights import (
    EXACT_KINDS,
    ModifiedPeriodicWeights,
    PeriodicWeights,
    SplitPeriodicWeights,
    WeightSequence,
)
from core.contracts.window import EscapeWitness, RateMismatch, WindowStats, WindowWitness
from core.errors import UnsupportedKindError, WindowUnderflowError
from core.services.weights import TailStructure, tail_log_rates, tail_structure, weight_at

logger = logging.getLogger(__name__)

_LOG_MAX = math.log(sys.float_info.max)

# Number of windows in an escape witness
_ESCAPE_STEPS = 3

# Longer witness windows take their value from the prefix summary
_DIRECT_WINDOW_MAX = 100_000


def compensated_prefix(values: Iterable[float]) -> list[float]:
    """Running sums with Neumaier compensation; ``result[0] == 0``."""
    total = 0.0
    comp = 0.0
    out = [0.0]
    for x in values:
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
        out.append(total + comp)
    return out


def _log_modulus(seq: WeightSequence, k: int) -> float:
    m = abs(weight_at(seq, k))
    if m == 0:
        raise WindowUnderflowError(f"|w_{k}| underflows to zero")
    return math.log(m)


def log_window_product(seq: WeightSequence, k: int, n: int) -> float:
    """``log P(k, n)`` by compensated summation."""
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    return math.fsum(_log_modulus(seq, k + j) for j in range(1, n + 1))


def _exp_checked(log_value: float) -> float:
    if log_value > _LOG_MAX:
        return math.inf
    try:
        value = math.exp(log_value)
    except OverflowError:
        return math.inf
    if value == 0.0:
        raise WindowUnderflowError(f"window value exp({log_value}) underflows to zero")
    return value


def window_product(seq: WeightSequence, k: int, n: int) -> float:
    """``P(k, n) = prod_{j=1..n} |w_{k+j}|``, accumulated in the log domain.

    Values beyond the float range are returned as ``math.inf``.
    """
    return _exp_checked(log_window_product(seq, k, n))


def scaled_window_value(seq: WeightSequence, c: float, k: int, n: int) -> float:
    """``c^n * P(k, n)`` by direct multiplication.

    The log-domain value decides overflow first; direct multiplication is
    used whenever the result fits the float range and its partial products
    do not leave it.
    """
    log_value = n * math.log(c) + log_window_product(seq, k, n)
    if log_value > _LOG_MAX:
        return math.inf
    try:
        value = c**n * math.prod(abs(weight_at(seq, k + j)) for j in range(1, n + 1))
    except OverflowError:
        value = math.nan
    if value == 0.0 or not math.isfinite(value):
        value = _exp_checked(log_value)
    return value


def witness(seq: WeightSequence, c: float, k: int, n: int) -> WindowWitness:
    return WindowWitness(k=k, n=n, value=scaled_window_value(seq, c, k, n))


def candidate_c(seq: WeightSequence, settings: Settings | None = None) -> float | RateMismatch:
    """The only scaling constant that can satisfy the criterion.

    Periodic and modified-periodic sequences: inverse geometric mean of the
    (base) pattern moduli. Split sequences: the common value when both
    tails share their geometric mean, otherwise ``RateMismatch``.
    """
    if seq.kind not in EXACT_KINDS:
        raise UnsupportedKindError("candidate_c", seq.kind)
    rtol = (settings or get_settings()).rate_rtol
    left_log, right_log = tail_log_rates(seq)
    if isinstance(seq, SplitPeriodicWeights):
        left_rate, right_rate = math.exp(left_log), math.exp(right_log)
        if not math.isclose(left_rate, right_rate, rel_tol=rtol):
            logger.debug("Rate mismatch: left %r, right %r", left_rate, right_rate)
            return RateMismatch(left_rate=left_rate, right_rate=right_rate)
        return math.exp(-(left_log + right_log) / 2)
    return math.exp(-right_log)


def _tail_drifts(
    seq: WeightSequence, log_c: float, tails: TailStructure
) -> tuple[float, float]:
    """``log`` growth of scaled windows per period, left and right tail."""
    left = math.fsum(
        _log_modulus(seq, k)
        for k in range(tails.left_boundary - tails.left_period, tails.left_boundary)
    )
    right = math.fsum(
        _log_modulus(seq, k)
        for k in range(tails.right_boundary, tails.right_boundary + tails.right_period)
    )
    return left + tails.left_period * log_c, right + tails.right_period * log_c


def scaled_prefix(seq: WeightSequence, c: float, lo: int, hi: int) -> list[float]:
    """``H(j) - H(lo)`` for ``j`` in ``[lo, hi]``."""
    log_c = math.log(c)
    logs = compensated_prefix(_log_modulus(seq, k) for k in range(lo, hi))
    return [f + j * log_c for j, f in enumerate(logs)]


def largest_rise(h: Sequence[float]) -> tuple[float, int, int]:
    """``max_{i<j} h[j] - h[i]`` and the first pair attaining it."""
    best = -math.inf
    pair = (0, 1)
    i_min = 0
    for j in range(1, len(h)):
        rise = h[j] - h[i_min]
        if rise > best:
            best, pair = rise, (i_min, j)
        if h[j] < h[i_min]:
            i_min = j
    return best, pair[0], pair[1]


def _extreme_windows(
    seq: WeightSequence, c: float, lo: int, hi: int
) -> tuple[WindowWitness, WindowWitness]:
    """Windows attaining the largest and the smallest scaled value inside ``[lo, hi)``."""
    h = scaled_prefix(seq, c, lo, hi)
    _, i_sup, j_sup = largest_rise(h)
    _, i_inf, j_inf = largest_rise([-x for x in h])
    # Prefix index i stands for H(lo + i); window (k, n) spans H(k+1) .. H(k+n+1).
    sup = witness(seq, c, lo + i_sup - 1, j_sup - i_sup)
    inf = witness(seq, c, lo + i_inf - 1, j_inf - i_inf)
    return sup, inf


@dataclass(frozen=True)
class PrefixSummary:
    """Extremes of ``H`` over the consecutive points of a run of weights.

    Values are relative to the first point, positions count points from the
    start of the run (``0 .. length``). The ``*_tail`` extremes skip point 0,
    so a rise or fall always pairs two distinct points. ``rise`` and ``fall``
    carry ``(value, i, j)`` with ``i < j``.
    """

    length: int
    total: float
    low: tuple[float, int]
    high: tuple[float, int]
    low_tail: tuple[float, int]
    high_tail: tuple[float, int]
    rise: tuple[float, int, int]
    fall: tuple[float, int, int]


def _step_summary(g: float) -> PrefixSummary:
    low = (g, 1) if g < 0 else (0.0, 0)
    high = (g, 1) if g > 0 else (0.0, 0)
    return PrefixSummary(1, g, low, high, (g, 1), (g, 1), (g, 0, 1), (g, 0, 1))


def join_summaries(a: PrefixSummary, b: PrefixSummary) -> PrefixSummary:
    """Summary of run ``a`` followed by run ``b``.

    Associative; ties keep the earliest position.
    """
    t, off = a.total, a.length

    def moved(point: tuple[float, int]) -> tuple[float, int]:
        return t + point[0], off + point[1]

    b_low_tail, b_high_tail = moved(b.low_tail), moved(b.high_tail)
    first = itemgetter(0)
    rise = max(
        a.rise,
        (b_high_tail[0] - a.low[0], a.low[1], b_high_tail[1]),
        (b.rise[0], off + b.rise[1], off + b.rise[2]),
        key=first,
    )
    fall = min(
        a.fall,
        (b_low_tail[0] - a.high[0], a.high[1], b_low_tail[1]),
        (b.fall[0], off + b.fall[1], off + b.fall[2]),
        key=first,
    )
    return PrefixSummary(
        length=off + b.length,
        total=t + b.total,
        low=min(a.low, moved(b.low), key=first),
        high=max(a.high, moved(b.high), key=first),
        low_tail=min(a.low_tail, b_low_tail, key=first),
        high_tail=max(a.high_tail, b_high_tail, key=first),
        rise=rise,
        fall=fall,
    )


def repeat_summary(s: PrefixSummary, times: int) -> PrefixSummary:
    """Summary of ``times`` copies of run ``s`` back to back, by doubling."""
    if times < 1:
        raise ValueError(f"repeat count must be >= 1, got {times}")
    result: PrefixSummary | None = None
    while True:
        if times & 1:
            result = s if result is None else join_summaries(result, s)
        times >>= 1
        if not times:
            assert result is not None
            return result
        s = join_summaries(s, s)


def _law_runs(
    seq: WeightSequence, lo: int, hi: int
) -> list[tuple[int, int, PeriodicWeights | None]]:
    """Split the weights ``[lo, hi)`` into runs of one periodic law.

    ``None`` marks weights without a law (overrides, sampled values).
    """
    if isinstance(seq, PeriodicWeights):
        runs = [(lo, hi, seq)]
    elif isinstance(seq, ModifiedPeriodicWeights):
        runs = []
        start = lo
        for k in sorted(k for k in seq.overrides if lo <= k < hi):
            runs += [(start, k, seq.base), (k, k + 1, None)]
            start = k + 1
        runs.append((start, hi, seq.base))
    elif isinstance(seq, SplitPeriodicWeights):
        s = min(max(seq.split_index, lo), hi)
        runs = [(lo, s, seq.left), (s, hi, seq.right)]
    else:
        runs = [(lo, hi, None)]
    return [run for run in runs if run[0] < run[1]]


def prefix_summary(seq: WeightSequence, c: float, lo: int, hi: int) -> PrefixSummary:
    """Summary of ``H`` over the points ``lo .. hi`` (weights ``[lo, hi)``).

    A run of one periodic law spanning at least two periods is folded by
    doubling, so the cost follows the number of overrides and the logarithm
    of the gaps between them.
    """
    if hi <= lo:
        raise ValueError(f"empty run [{lo}, {hi})")
    log_c = math.log(c)

    def steps(a: int, b: int) -> list[PrefixSummary]:
        return [_step_summary(_log_modulus(seq, k) + log_c) for k in range(a, b)]

    parts: list[PrefixSummary] = []
    for a, b, law in _law_runs(seq, lo, hi):
        if law is None or b - a < 2 * law.period:
            parts += steps(a, b)
            continue
        times = (b - a) // law.period
        parts.append(repeat_summary(reduce(join_summaries, steps(a, a + law.period)), times))
        parts += steps(a + times * law.period, b)
    return reduce(join_summaries, parts)


def _summary_window(
    seq: WeightSequence, c: float, lo: int, extreme: tuple[float, int, int]
) -> WindowWitness:
    log_value, i, j = extreme
    # Point i stands for H(lo + i); window (k, n) spans H(k+1) .. H(k+n+1).
    k, n = lo + i - 1, j - i
    if n <= _DIRECT_WINDOW_MAX:
        return witness(seq, c, k, n)
    return WindowWitness(k=k, n=n, value=_exp_checked(log_value))


def escape_witness(
    seq: WeightSequence,
    c: float,
    direction: EscapeDirection,
    tails: TailStructure,
    use_right: bool,
) -> EscapeWitness:
    """Windows covering 1, 2, 3 periods of the diverging tail."""
    windows = []
    for m in range(1, _ESCAPE_STEPS + 1):
        if use_right:
            n = m * tails.right_period
            k = tails.right_boundary - 1
        else:
            n = m * tails.left_period
            k = tails.left_boundary - n - 1
        windows.append(witness(seq, c, k, n))
    return EscapeWitness(c=c, direction=direction, windows=tuple(windows))


def scaled_window_stats(
    seq: WeightSequence,
    c: float,
    *,
    horizon: int | None = None,
    settings: Settings | None = None,
) -> WindowStats:
    """Sup and inf of ``c^n * P(k, n)`` over all windows.

    Exact for periodic, modified-periodic and split-periodic sequences.
    Sampled sequences are scanned over the windows inside
    ``[-horizon, horizon]`` (``exact = False``).
    """
    if not c > 0:
        raise ValueError(f"scaling constant must be positive, got {c!r}")
    settings = settings or get_settings()
    if seq.kind not in EXACT_KINDS:
        return _horizon_stats(seq, c, horizon or settings.sampled_horizon)

    tails = tail_structure(seq)
    drift_left, drift_right = _tail_drifts(seq, math.log(c), tails)
    tol_left = settings.rate_rtol * tails.left_period
    tol_right = settings.rate_rtol * tails.right_period
    sup_bounded = drift_left <= tol_left and drift_right <= tol_right
    inf_positive = drift_left >= -tol_left and drift_right >= -tol_right

    lo = tails.left_boundary - 2 * tails.left_period
    hi = tails.right_boundary + 2 * tails.right_period
    summary = prefix_summary(seq, c, lo, hi)
    sup_w = _summary_window(seq, c, lo, summary.rise) if sup_bounded else None
    inf_w = _summary_window(seq, c, lo, summary.fall) if inf_positive else None
    logger.debug(
        "Window stats c=%r box=[%d, %d] drifts=(%r, %r)", c, lo, hi, drift_left, drift_right
    )

    sup_escape = inf_escape = None
    if not sup_bounded:
        sup_escape = escape_witness(
            seq, c, EscapeDirection.SUP, tails, use_right=drift_right > tol_right
        )
    if not inf_positive:
        inf_escape = escape_witness(
            seq, c, EscapeDirection.INF, tails, use_right=drift_right < -tol_right
        )

    return WindowStats(
        c=c,
        sup_scaled=math.inf if sup_w is None else sup_w.value,
        inf_scaled=0.0 if inf_w is None else inf_w.value,
        exact=True,
        sup_witness=sup_w,
        inf_witness=inf_w,
        sup_escape=sup_escape,
        inf_escape=inf_escape,
    )


def _horizon_stats(seq: WeightSequence, c: float, horizon: int) -> WindowStats:
    """Scan every window whose weights lie in ``[-horizon, horizon]``."""
    sup_w, inf_w = _extreme_windows(seq, c, -horizon, horizon + 1)
    logger.debug("Horizon scan c=%r horizon=%d sup=%r inf=%r", c, horizon, sup_w, inf_w)
    return WindowStats(
        c=c,
        sup_scaled=sup_w.value,
        inf_scaled=inf_w.value,
        exact=False,
        horizon=horizon,
        sup_witness=sup_w,
        inf_witness=inf_w,
    )
