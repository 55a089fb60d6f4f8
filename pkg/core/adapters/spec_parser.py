"""Parser for the textual weight-sequence specs accepted by the CLI.

Grammar::

    periodic:W,W,...                 w_k = pattern[k mod p]
    modified:periodic:W,...;K=W,...  base pattern with finite overrides
    split:W,...|W,...[@S]            left pattern below S, right from S (S defaults to 0)
    sampled:PATH                     CSV rows ``index,re,im`` (optional header)

Weights ``W`` are reals or complex numbers written ``a+bi``, ``a-bi``,
``bi`` or ``i``. Every error carries its character position in the input text.
"""

from __future__ import annotations

import csv
import logging
import re
from pathlib import Path

from core.contracts.weights import (
    ModifiedPeriodicWeights,
    PeriodicWeights,
    SampledWeights,
    SplitPeriodicWeights,
    WeightSequence,
)
from core.errors import SpecParseError

logger = logging.getLogger(__name__)

_UNSIGNED = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"[+-]?{_UNSIGNED}")
_IMAG_RE = re.compile(rf"(?P<sign>[+-]?)(?P<mag>{_UNSIGNED})?i")
_COMPLEX_RE = re.compile(rf"(?P<re>[+-]?{_UNSIGNED})(?P<sign>[+-])(?P<mag>{_UNSIGNED})?i")
_INT_RE = re.compile(r"[+-]?\d+")


def _imag(sign: str, mag: str | None) -> float:
    value = float(mag) if mag else 1.0
    return -value if sign == "-" else value


def parse_complex(token: str, text: str = "", position: int = 0) -> complex:
    """Parse one weight; ``text``/``position`` locate it for error messages."""
    t = token.strip()
    at = position + (len(token) - len(token.lstrip()))
    if _REAL_RE.fullmatch(t):
        return complex(float(t), 0.0)
    if m := _IMAG_RE.fullmatch(t):
        return complex(0.0, _imag(m["sign"], m["mag"]))
    if m := _COMPLEX_RE.fullmatch(t):
        return complex(float(m["re"]), _imag(m["sign"], m["mag"]))
    raise SpecParseError(text or token, at, f"invalid weight {t!r}")


def _split(chunk: str, sep: str, start: int) -> list[tuple[str, int]]:
    """Split ``chunk`` on ``sep``, keeping each piece's absolute position."""
    pieces = []
    pos = start
    for piece in chunk.split(sep):
        pieces.append((piece, pos))
        pos += len(piece) + len(sep)
    return pieces


def _parse_pattern(chunk: str, text: str, start: int) -> tuple[complex, ...]:
    if not chunk.strip():
        raise SpecParseError(text, start, "empty pattern")
    return tuple(parse_complex(piece, text, pos) for piece, pos in _split(chunk, ",", start))


def _parse_int(token: str, text: str, position: int) -> int:
    t = token.strip()
    if not _INT_RE.fullmatch(t):
        raise SpecParseError(text, position, f"invalid index {t!r}")
    return int(t)


def _parse_periodic(body: str, text: str, start: int) -> PeriodicWeights:
    return PeriodicWeights(pattern=_parse_pattern(body, text, start))


def _parse_modified(body: str, text: str, start: int) -> ModifiedPeriodicWeights:
    base_part, sep, override_part = body.partition(";")
    if not base_part.startswith("periodic:"):
        raise SpecParseError(text, start, "modified sequences need a 'periodic:' base")
    base = _parse_periodic(base_part[len("periodic:"):], text, start + len("periodic:"))

    overrides: dict[int, complex] = {}
    if sep and override_part.strip():
        for piece, pos in _split(override_part, ",", start + len(base_part) + 1):
            key, eq, value = piece.partition("=")
            if not eq:
                raise SpecParseError(text, pos, f"override {piece.strip()!r} lacks '='")
            k = _parse_int(key, text, pos)
            if k in overrides:
                raise SpecParseError(text, pos, f"duplicate override index {k}")
            overrides[k] = parse_complex(value, text, pos + len(key) + 1)
    return ModifiedPeriodicWeights(base=base, overrides=overrides)


def _parse_split(body: str, text: str, start: int) -> SplitPeriodicWeights:
    patterns, at, index = body.partition("@")
    left, bar, right = patterns.partition("|")
    if not bar:
        raise SpecParseError(text, start + len(patterns), "split sequences need 'left|right'")
    split_index = _parse_int(index, text, start + len(patterns) + 1) if at else 0
    return SplitPeriodicWeights(
        left=PeriodicWeights(pattern=_parse_pattern(left, text, start)),
        right=PeriodicWeights(pattern=_parse_pattern(right, text, start + len(left) + 1)),
        split_index=split_index,
    )


def load_sampled_csv(path: Path) -> SampledWeights:
    """Read ``index,re,im`` rows with contiguous ascending indices.

    A first row that does not start with an integer is taken as a header.
    Extensions follow the clamp rule (end-point values).
    """
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise SpecParseError(str(path), 0, f"cannot read sampled data ({exc.strerror})") from exc

    if rows and not _INT_RE.fullmatch(rows[0][0].strip()):
        rows = rows[1:]
    if not rows:
        raise SpecParseError(str(path), 0, "sampled data has no rows")

    indices: list[int] = []
    values: list[complex] = []
    for line_no, row in enumerate(rows, start=1):
        where = f"{path}:{line_no}"
        if len(row) != 3:
            raise SpecParseError(where, 0, f"expected 3 columns, got {len(row)}")
        k = _parse_int(row[0], where, 0)
        try:
            re_part, im_part = float(row[1]), float(row[2])
        except ValueError as exc:
            raise SpecParseError(where, len(row[0]) + 1, "invalid number") from exc
        if indices and k != indices[-1] + 1:
            raise SpecParseError(where, 0, f"index {k} does not follow {indices[-1]}")
        indices.append(k)
        values.append(complex(re_part, im_part))

    logger.debug("Loaded %d sampled weights from %s", len(values), path)
    return SampledWeights(k_min=indices[0], values=tuple(values))


def parse_spec(text: str) -> WeightSequence:
    """Parse a sequence spec string into a weight sequence."""
    kind, colon, body = text.partition(":")
    if not colon:
        raise SpecParseError(text, 0, "missing '<kind>:' prefix")
    start = len(kind) + 1
    if kind == "periodic":
        return _parse_periodic(body, text, start)
    if kind == "modified":
        return _parse_modified(body, text, start)
    if kind == "split":
        return _parse_split(body, text, start)
    if kind == "sampled":
        if not body.strip():
            raise SpecParseError(text, start, "missing CSV path")
        return load_sampled_csv(Path(body.strip()))
    raise SpecParseError(text, 0, f"unknown kind {kind!r}")
