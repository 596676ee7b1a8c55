"""Deterministic JSON text with every float written to 17 significant digits."""
from __future__ import annotations

import json
import math


def _emit(obj, level: int, out: list[str]) -> None:
    pad = "  " * (level + 1)
    end = "  " * level
    if obj is None or isinstance(obj, (bool, str)):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialise non-finite float {obj}")
        out.append(format(obj, ".17g"))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(x is None or isinstance(x, (bool, int, float, str)) for x in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _emit(v, level + 1, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        # numpy scalars and the like
        if hasattr(obj, "item"):
            _emit(obj.item(), level, out)
        else:
            raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    out: list[str] = []
    _emit(obj, 0, out)
    return "".join(out) + "\n"
