"""Graphviz DOT export for communication graphs and LTSs."""

from __future__ import annotations

from .lts import TAU, Lts
from .system import PortRef
from .topology import CommGraph


def _quote(s) -> str:
    return '"{}"'.format(str(s).replace("\\", "\\\\").replace('"', r"\""))


def _state_name(s) -> str:
    if isinstance(s, tuple):
        return "(" + ",".join(_state_name(x) for x in s) + ")"
    return str(s)


def _label_text(label) -> str:
    if label is TAU:
        return "tau"
    if isinstance(label, frozenset):
        return "{" + ",".join(sorted(label)) + "}"
    return str(label)


def graph_to_dot(graph: CommGraph, name: str = "G") -> str:
    lines = [f"graph {_quote(name)} {{"]
    for v in graph.vertices:
        shape = "box" if isinstance(v, PortRef) else "ellipse"
        lines.append(f"  {_quote(v)} [shape={shape}];")
    for u, v in graph.edges:
        style = " [style=bold]" if isinstance(u, PortRef) and isinstance(v, PortRef) else ""
        lines.append(f"  {_quote(u)} -- {_quote(v)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lts_to_dot(lts: Lts, name: str = "L") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for s in lts.sorted_states():
        shape = "doublecircle" if s in lts.initials else "circle"
        lines.append(f"  {_quote(_state_name(s))} [shape={shape}];")
    for s, a, t in lts.sorted_transitions():
        attrs = f"label={_quote(_label_text(a))}"
        if a is TAU:
            attrs += ", style=dashed"
        lines.append(f"  {_quote(_state_name(s))} -> {_quote(_state_name(t))} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(obj, name: str | None = None) -> str:
    """DOT text for a :class:`CommGraph` (undirected) or an :class:`Lts` (directed)."""
    if isinstance(obj, CommGraph):
        return graph_to_dot(obj, name or "G")
    if isinstance(obj, Lts):
        return lts_to_dot(obj, name or "L")
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
