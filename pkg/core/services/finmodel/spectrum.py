"""Closed-form spectrum of the cyclic wrap model."""

from __future__ import annotations

import cmath
import math
import sys

import numpy as np

from core.config import Settings
from core.contracts.weights import WeightSequence
from core.services.finmodel.models import wrap_model
from core.services.weights import weight_at

# Components this many ulps of the radius or smaller are rounding noise
_SNAP_ULPS = 4


def wrap_spectrum(
    seq: WeightSequence,
    size: int,
    offset: int = 0,
    settings: Settings | None = None,
) -> np.ndarray:
    """Eigenvalues of ``wrap_model(seq, size, offset)``.

    The wrap is a weighted cyclic shift, so its eigenvalues are the
    ``size``-th roots of ``w_offset * ... * w_{offset+size-1}``: modulus
    ``(prod |w|)^(1/size)``, arguments ``(sum arg w + 2 pi j) / size``.
    Rounding noise on the real and imaginary axes is returned as ``0.0``.
    """
    # Validates size against the period and max_dim.
    wrap_model(seq, size, offset, settings)
    weights = [weight_at(seq, offset + k) for k in range(size)]
    radius = math.prod(abs(w) for w in weights) ** (1.0 / size)
    if radius == 0.0 or not math.isfinite(radius):
        radius = math.exp(math.fsum(math.log(abs(w)) for w in weights) / size)
    phase = math.fsum(cmath.phase(w) for w in weights)
    points = np.empty(size, dtype=np.complex128)
    for j in range(size):
        theta = (phase + 2 * math.pi * j) / size
        re = _snap(radius * math.cos(theta), radius)
        im = _snap(radius * math.sin(theta), radius)
        points[j] = complex(re, im)
    return points


def _snap(component: float, radius: float) -> float:
    if abs(component) <= _SNAP_ULPS * sys.float_info.epsilon * radius:
        return 0.0
    return component
