"""Deterministic text serialization helpers.

Floats are printed with 17 significant digits everywhere a file format is
involved: 17 digits round-trip IEEE-754 doubles exactly, so every stage
file, export document and report is lossless and byte-stable on rewrite.
"""

from __future__ import annotations


def float17(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"  # collapse -0.0 so rewrites stay byte-identical
    return format(x, ".17g")


def dumps_17g(obj, indent: int = 2) -> str:
    """JSON text with floats rendered via :func:`float17`.

    Supports the subset of JSON this package emits: dict (insertion order
    preserved), list/tuple, str, bool, int, float, None.
    """

    def render(value, depth):
        pad = " " * (indent * depth)
        inner = " " * (indent * (depth + 1))
        if isinstance(value, dict):
            if not value:
                return "{}"
            rows = []
            for key, item in value.items():
                if not isinstance(key, str):
                    raise TypeError(f"JSON keys must be str, got {type(key)}")
                rows.append(f'{inner}"{_escape(key)}": {render(item, depth + 1)}')
            return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
        if isinstance(value, (list, tuple)):
            if not len(value):
                return "[]"
            rows = [f"{inner}{render(item, depth + 1)}" for item in value]
            return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
        if isinstance(value, str):
            return f'"{_escape(value)}"'
        if value is None:
            return "null"
        if value is True:
            return "true"
        if value is False:
            return "false"
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return float17(value)
        raise TypeError(f"cannot serialize {type(value)}")

    return render(obj, 0) + "\n"


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)
