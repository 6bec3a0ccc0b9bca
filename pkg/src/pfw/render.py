"""Hasse-diagram rendering: one node per element, covering edges only."""

from __future__ import annotations

from .errors import SchemaError
from .lattice import FiniteFrame
from .serialize import Instance


def _quote(name: str) -> str:
    return '"' + name.replace('"', '\\"') + '"'


def render_dot(frame: FiniteFrame) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for name in frame.names:
        lines.append(f"  {_quote(name)};")
    for a, b in frame.covers():
        lines.append(f"  {_quote(frame.names[a])} -> {_quote(frame.names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_instance(instance: Instance) -> str:
    if instance.kind == "frame":
        return render_dot(instance.value)
    raise SchemaError("render", f"unsupported kind {instance.kind!r} (expected frame)")
