"""Canonical rendering of AQL statements.

Uppercase keywords, one clause per line, utterances verbatim.  The contract
is `parse(render(s)) == s` structurally, which the session log relies on for
replay.
"""

from __future__ import annotations

from typing import List

from .ast import (
    AggregateProj,
    ColumnProj,
    DeleteStatement,
    EntityMatch,
    ExplicitPairs,
    FindQuery,
    NaturalByName,
    OutputStatement,
    Projection,
    SaveStatement,
    SchemaQuery,
    StarProj,
    Statement,
)


def _projection(p: Projection) -> str:
    if isinstance(p, StarProj):
        return "*"
    if isinstance(p, ColumnProj):
        return p.name
    return f"{p.function}({'*' if p.column is None else p.column})"


def _find_lines(q: FindQuery) -> List[str]:
    blocks, conds = q.chain()
    lines: List[str] = []
    for i, block in enumerate(blocks):
        if i > 0:
            lines.append("JOIN")
        lines.append("FIND " + ", ".join(_projection(p) for p in block.projections))
        lines.append("FROM " + block.source)
        if block.predicate is not None:
            lines.append("WHERE " + block.predicate)
        if i > 0:
            cond = conds[i - 1]
            if isinstance(cond, EntityMatch):
                lines.append(f"ON ENTITY {cond.left} = {cond.right}")
            elif isinstance(cond, ExplicitPairs):
                lines.append("ON " + ", ".join(f"{l} = {r}" for l, r in cond.pairs))
            # NaturalByName renders nothing: it is the default
    return lines


def render_statement(stmt: Statement) -> str:
    if isinstance(stmt, SchemaQuery):
        return "?" if stmt.target is None else f"? {stmt.target}"
    if isinstance(stmt, FindQuery):
        return "\n".join(_find_lines(stmt))
    if isinstance(stmt, SaveStatement):
        inner = _find_lines(stmt.query)
        return "\n".join(["SAVE ("] + inner + [f") AS {stmt.new_table}"])
    if isinstance(stmt, OutputStatement):
        if stmt.destination is None:
            return f"OUTPUT {stmt.table}"
        return f"OUTPUT {stmt.table} TO '{stmt.destination}'"
    if isinstance(stmt, DeleteStatement):
        return f"DELETE {stmt.table}"
    raise TypeError(f"not a statement: {stmt!r}")


def render_script(statements: List[Statement]) -> str:
    return "\n".join(render_statement(s) + ";" for s in statements) + "\n"
