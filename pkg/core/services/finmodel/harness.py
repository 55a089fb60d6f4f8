"""Power-similarity harness, seeded oracle instances and sparse power images."""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping

import numpy as np

from core.config import Settings, get_settings
from core.contracts.finmodel import FiniteModel, LemmaCheck, PowerImage
from core.contracts.weights import WeightSequence
from core.errors import DimensionMismatchError, PreconditionError, SingularMatrixError
from core.services.finmodel.models import as_matrix, general_model
from core.services.weights import weight_at

logger = logging.getLogger(__name__)

# Singular values of the random conjugator lie in [1, _COND_MAX]
_COND_MAX = 3.0


def lemma1_harness(
    a: FiniteModel | np.ndarray,
    b: FiniteModel | np.ndarray,
    x: FiniteModel | np.ndarray,
    n: int,
    settings: Settings | None = None,
) -> LemmaCheck:
    """Check ``X A^n = B^n X`` given ``X A = B X`` with ``X`` invertible.

    Precondition failures raise; a failed postcondition is reported through
    ``holds`` and logged.
    """
    settings = settings or get_settings()
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    am, bm, xm = as_matrix(a), as_matrix(b), as_matrix(x)
    if not am.shape == bm.shape == xm.shape:
        raise DimensionMismatchError(
            f"shapes differ: A {am.shape}, B {bm.shape}, X {xm.shape}"
        )

    sv = np.linalg.svd(xm, compute_uv=False)
    if sv[-1] <= settings.invertibility_rtol * sv[0]:
        raise SingularMatrixError(f"X is numerically singular (sigma_min={sv[-1]!r})")
    norm_x = float(sv[0])
    norm_a = float(np.linalg.norm(am, 2))
    intertwining = float(np.linalg.norm(xm @ am - bm @ xm, 2))
    if intertwining > settings.lemma_precondition_rtol * norm_x * norm_a:
        raise PreconditionError(f"X A != B X (residual {intertwining!r})")

    residual = float(
        np.linalg.norm(xm @ np.linalg.matrix_power(am, n) - np.linalg.matrix_power(bm, n) @ xm, 2)
    )
    bound = settings.lemma_postcondition_rtol * norm_x * norm_a**n
    holds = residual <= bound
    if not holds:
        logger.warning("Power similarity fails at n=%d: residual %r > %r", n, residual, bound)
    return LemmaCheck(n=n, residual=residual, bound=bound, holds=holds)


def _random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    # Fix the phases so the factor is Haar distributed.
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _random_conjugator(rng: np.random.Generator, dim: int) -> np.ndarray:
    """``U diag(s) V*`` with Haar ``U, V`` and singular values ``s`` in ``[1, _COND_MAX]``."""
    s = rng.uniform(1.0, _COND_MAX, dim)
    return _random_unitary(rng, dim) @ np.diag(s) @ _random_unitary(rng, dim).conj().T


def random_oracle_instance(
    seed: int, dim: int, settings: Settings | None = None
) -> tuple[FiniteModel, FiniteModel, FiniteModel]:
    """Seeded ``(A, B, X)`` with ``B = X A X^{-1}`` and ``cond(X) <= 3``."""
    if dim < 1:
        raise DimensionMismatchError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    x = _random_conjugator(rng, dim)
    b = x @ a @ np.linalg.inv(x)
    return (
        general_model(a, settings),
        general_model(b, settings),
        general_model(x, settings),
    )


def random_power_bounded_instance(
    seed: int, dim: int, settings: Settings | None = None
) -> tuple[FiniteModel, float]:
    """Seeded ``T = X U X^{-1}`` with ``U`` unitary, and ``cond(X)``.

    Every power satisfies ``||T^n|| = ||X U^n X^{-1}|| <= cond(X)``, for
    negative ``n`` as well.
    """
    if dim < 1:
        raise DimensionMismatchError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    u = _random_unitary(rng, dim)
    x = _random_conjugator(rng, dim)
    t = x @ u @ np.linalg.inv(x)
    return general_model(t, settings), float(np.linalg.cond(x, 2))


def apply_power(seq: WeightSequence, x: Mapping[int, complex], n: int) -> PowerImage:
    """``S_w^n x`` for finitely supported ``x``.

    Coefficient ``xi_k`` moves to ``k + n`` multiplied by ``w_k ... w_{k+n-1}``.
    The norm is accumulated in the log domain.
    """
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    coefficients: dict[int, complex] = {}
    log_moduli: list[float] = []
    for k in sorted(x):
        xi = complex(x[k])
        if xi == 0:
            continue
        weights = [weight_at(seq, k + j) for j in range(n)]
        coefficients[k + n] = xi * math.prod(weights)
        log_moduli.append(math.log(abs(xi)) + math.fsum(math.log(abs(w)) for w in weights))
    if not log_moduli:
        return PowerImage(n=n, coefficients=coefficients, norm=0.0)
    log_norm = 0.5 * float(np.logaddexp.reduce(2.0 * np.array(log_moduli)))
    norm = math.inf if log_norm > math.log(np.finfo(float).max) else math.exp(log_norm)
    return PowerImage(n=n, coefficients=coefficients, norm=norm)
