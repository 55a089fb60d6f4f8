"""Deterministic text renderers for CLI output.

Every float is written with 17 significant digits (``%.17g``) so that the
printed value round-trips to the same double; non-finite floats become
``null``. Key order is the insertion order of the document.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence
from typing import Any

from core.contracts.common import ContractModel

NULL = "null"


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return NULL
    return "%.17g" % x


def _render(value: Any) -> str:
    if value is None:
        return NULL
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, ContractModel):
        return _render(value.model_dump(by_alias=True))
    if isinstance(value, Mapping):
        items = (f"{json.dumps(str(k))}:{_render(v)}" for k, v in value.items())
        return "{" + ",".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_render(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value).__name__} as JSON")


def to_json(document: Any) -> str:
    """Compact JSON text with a trailing newline."""
    return _render(document) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Comma-separated rows under ``header``, ``\\n`` line endings."""
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
