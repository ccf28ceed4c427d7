"""Deterministic JSON emission with 17-significant-digit floats.

The stdlib encoder writes shortest round-trip representations, which are
lossless but not fixed-width. Certificate and code files must be
byte-identical across reruns, so floats are emitted with an explicit
``%.17g`` format (17 significant digits round-trip float64 exactly).
Reading back uses plain ``json.loads``.
"""

from __future__ import annotations

import json
import math
from typing import Any


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(float(x), ".17g")


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    closepad = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = [_emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(pad + s for s in items) + "\n" + closepad + "]"
    if isinstance(obj, dict):
        if len(obj) == 0:
            return "{}"
        items = [
            json.dumps(str(k)) + ": " + _emit(v, indent, level + 1)
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(pad + s for s in items) + "\n" + closepad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialize ``obj`` deterministically (dict order preserved)."""
    return _emit(obj, indent, 0) + "\n"


def dump_path(path: str, obj: Any) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(obj))


def load_path(path: str) -> Any:
    with open(path) as fh:
        return json.load(fh)
