"""Stable text rendering of physical plans: one operator per line, indented,
with strategy, estimated rows, estimated native calls, and estimated cost."""

from __future__ import annotations

from ..predicates import render_body
from .nodes import (
    PAggregate,
    PHashJoin,
    PLocalFilter,
    PProbeJoin,
    PProject,
    PScan,
    PShared,
    PSink,
    PhysicalNode,
)


def _line(node: PhysicalNode) -> str:
    est = node.est.describe()
    if isinstance(node, PScan):
        parts = [f"Scan {node.relation.name} [{', '.join(node.fetch)}]"]
        if node.native is not None:
            parts.append(f"where {render_body(node.native.body)}")
        if node.local is not None:
            parts.append(f"filter {render_body(node.local)}")
        return " ".join(parts) + f" ({est})"
    if isinstance(node, PHashJoin):
        return f"HashJoin {node.condition.describe()} ({est})"
    if isinstance(node, PProbeJoin):
        probes = f"{node.bound.est.rows:g}"
        parts = [
            f"ProbeJoin {node.condition.describe()} probe × {probes} "
            f"into {node.probed.name}"
        ]
        if node.probed_native is not None:
            parts.append(f"where {render_body(node.probed_native.body)}")
        if node.probed_local is not None:
            parts.append(f"filter {render_body(node.probed_local)}")
        return " ".join(parts) + f" ({est})"
    if isinstance(node, PLocalFilter):
        return f"Filter [{node.description}] ({est})"
    if isinstance(node, PAggregate):
        return f"Aggregate {', '.join(s.describe() for s in node.specs)} ({est})"
    if isinstance(node, PProject):
        return f"Project [{', '.join(node.names)}] ({est})"
    if isinstance(node, PSink):
        target = node.target if node.target is not None else "stdout"
        return f"Sink {node.kind} -> {target} ({est})"
    if isinstance(node, PShared):
        return f"Shared[{node.key}] ({est})"
    raise TypeError(f"not a physical node: {node!r}")


def explain(plan: PhysicalNode) -> str:
    lines = []

    def visit(node: PhysicalNode, depth: int) -> None:
        lines.append("  " * depth + _line(node))
        for child in node.children:
            visit(child, depth + 1)

    visit(plan, 0)
    return "\n".join(lines)
