"""Materializing executor for physical plans.

Every operator returns a fully materialized ResultTable (intermediates are
first-class in this engine, so there is no need for a streaming iterator
model at desk scale).  The executor collects one provenance entry per
request it issues; shared compiled subtrees are executed once and their
provenance counted once.
"""

from __future__ import annotations

import datetime as _dt
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..entity import normalize_entity
from ..errors import ExecutionError, NotFoundError, PlanError
from ..predicates import evaluate
from ..table import Column, ProvenanceEntry, ResultTable
from ..plan.nodes import (
    AggSpec,
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
from ..wrappers import Binding, FindRequest, Wrapper


def _join_key(value, mode: str):
    if value is None:
        return None
    if mode == "entity":
        return normalize_entity(str(value))
    if isinstance(value, str):
        return value.casefold()
    if isinstance(value, bool):
        return ("b", value)
    if isinstance(value, (int, float)):
        return ("n", float(value))
    if isinstance(value, _dt.date):
        return ("d", value.toordinal())
    return value


class PlanExecutor:
    def __init__(
        self,
        wrapper_for: Callable[[str], Wrapper],
        workspace_table: Callable[[str], ResultTable],
        principal: str = "anonymous",
    ):
        self.wrapper_for = wrapper_for
        self.workspace_table = workspace_table
        self.principal = principal
        self.entries: List[ProvenanceEntry] = []
        self._shared: Dict[str, ResultTable] = {}

    def run(self, plan: PhysicalNode) -> ResultTable:
        table = self._exec(plan)
        return table.with_provenance(tuple(self.entries))

    # --- operators -----------------------------------------------------------

    def _exec(self, node: PhysicalNode) -> ResultTable:
        if isinstance(node, PScan):
            return self._scan(node)
        if isinstance(node, PHashJoin):
            return self._hash_join(node)
        if isinstance(node, PProbeJoin):
            return self._probe_join(node)
        if isinstance(node, PLocalFilter):
            child = self._exec(node.input)
            rows = [
                r for r in child.rows if evaluate(node.expr, r, child.schema)
            ]
            return ResultTable(schema=node.columns, rows=rows)
        if isinstance(node, PAggregate):
            child = self._exec(node.input)
            return ResultTable(
                schema=node.columns, rows=[self._aggregate_row(node.specs, child)]
            )
        if isinstance(node, PProject):
            child = self._exec(node.input)
            idx = [self._index_of(child.schema, n) for n in node.names]
            rows = [tuple(r[i] for i in idx) for r in child.rows]
            return ResultTable(schema=node.columns, rows=rows)
        if isinstance(node, PSink):
            return self._exec(node.input)
        if isinstance(node, PShared):
            if node.key not in self._shared:
                self._shared[node.key] = self._exec(node.input)
            return self._shared[node.key]
        raise TypeError(f"not a physical node: {node!r}")

    @staticmethod
    def _index_of(schema: Sequence[Column], name: str) -> int:
        for i, col in enumerate(schema):
            if col.name == name:
                return i
        raise PlanError(f"column {name!r} missing from intermediate result")

    def _scan(self, node: PScan) -> ResultTable:
        relation = node.relation
        if relation.kind == "workspace":
            stored = self.workspace_table(relation.name)
            idx = [self._index_of(stored.schema, n) for n in node.fetch]
            rows = [tuple(r[i] for i in idx) for r in stored.rows]
            if node.local is not None:
                plain = tuple(Column(f, stored.schema[i].type) for f, i in zip(node.fetch, idx))
                rows = [r for r in rows if evaluate(node.local, r, plain)]
            self.entries.append(
                ProvenanceEntry(
                    source=relation.name,
                    native_query=f"workspace scan [{', '.join(node.fetch)}]",
                    call_count=0,
                    kind="workspace",
                )
            )
            return ResultTable(schema=node.columns, rows=rows)
        wrapper = self.wrapper_for(relation.table.source)
        req = FindRequest(
            table=relation.table,
            projections=tuple(node.fetch),
            predicate=node.native,
            principal=self.principal,
        )
        fetched = wrapper.execute_find(req)
        rows = fetched.rows
        if node.local is not None:
            rows = [r for r in rows if evaluate(node.local, r, fetched.schema)]
        self.entries.extend(fetched.provenance)
        return ResultTable(schema=node.columns, rows=rows)

    def _hash_join(self, node: PHashJoin) -> ResultTable:
        left = self._exec(node.left)
        right = self._exec(node.right)
        mode = node.condition.mode
        lcols = [self._index_of(left.schema, l) for l, _ in node.condition.pairs]
        rcols = [self._index_of(right.schema, r) for _, r in node.condition.pairs]
        build: Dict[tuple, List[tuple]] = {}
        for row in right.rows:
            key = tuple(_join_key(row[i], mode) for i in rcols)
            if any(k is None for k in key):
                continue
            build.setdefault(key, []).append(row)
        matches: List[Tuple[tuple, tuple]] = []
        for row in left.rows:
            key = tuple(_join_key(row[i], mode) for i in lcols)
            if any(k is None for k in key):
                continue
            for rrow in build.get(key, ()):
                matches.append((row, rrow))
        return self._emit_join_with(node, left, right.schema, matches, use_emit_names=True)

    def _emit_join_with(self, node, left, right_schema, matches, use_emit_names):
        left_idx = [self._index_of(left.schema, n) for n in node.left_names]
        if use_emit_names:
            right_idx = [
                self._index_of(right_schema, emit) for _, emit in node.right_keep
            ]
        else:
            right_idx = [
                self._index_of(right_schema, src) for src, _ in node.right_keep
            ]
        rows = [
            tuple(l[i] for i in left_idx) + tuple(r[i] for i in right_idx)
            for l, r in matches
        ]
        return ResultTable(schema=node.columns, rows=rows)

    def _probe_join(self, node: PProbeJoin) -> ResultTable:
        bound = self._exec(node.bound)
        bound_label, probed_col = node.condition.pairs[0]
        mode = node.condition.mode
        b_idx = self._index_of(bound.schema, bound_label)
        values = [row[b_idx] for row in bound.rows if row[b_idx] is not None]
        if not bound.rows:
            return ResultTable(schema=node.columns, rows=[])
        wrapper = self.wrapper_for(node.probed.table.source)
        req = FindRequest(
            table=node.probed.table,
            projections=tuple(node.probed_fetch),
            predicate=node.probed_native,
            bindings=(Binding(column=probed_col, mode=mode),),
            principal=self.principal,
        )
        if values:
            probed = wrapper.execute_probe_batch(req, values)
            self.entries.extend(probed.provenance)
            probed_rows = probed.rows
            if node.probed_local is not None:
                probed_rows = [
                    r
                    for r in probed_rows
                    if evaluate(node.probed_local, r, probed.schema)
                ]
            # duplicate probe values fetch identical rows; dedupe before matching
            seen = set()
            unique_rows = []
            for r in probed_rows:
                if r not in seen:
                    seen.add(r)
                    unique_rows.append(r)
            p_idx = self._index_of(probed.schema, probed_col)
            build: Dict[object, List[tuple]] = {}
            for row in unique_rows:
                key = _join_key(row[p_idx], mode)
                if key is None:
                    continue
                build.setdefault(key, []).append(row)
            matches: List[Tuple[tuple, tuple]] = []
            for row in bound.rows:
                key = _join_key(row[b_idx], mode)
                if key is None:
                    continue
                for rrow in build.get(key, ()):
                    matches.append((row, rrow))
            probed_schema = probed.schema
        else:
            matches = []
            probed_schema = tuple(
                Column(c, node.probed.column_type(c)) for c in node.probed_fetch
            )
        return self._emit_join_with(node, bound, probed_schema, matches, use_emit_names=False)

    @staticmethod
    def _aggregate_row(specs: Sequence[AggSpec], child: ResultTable) -> tuple:
        out = []
        for spec in specs:
            if spec.column is None:
                values = child.rows
                if spec.function != "COUNT":
                    raise PlanError(f"{spec.function}(*) is not defined")
                out.append(len(child.rows))
                continue
            idx = None
            for i, col in enumerate(child.schema):
                if col.name == spec.column:
                    idx = i
                    break
            if idx is None:
                raise PlanError(f"aggregate column {spec.column!r} missing")
            values = [r[idx] for r in child.rows if r[idx] is not None]
            fn = spec.function
            if fn == "COUNT":
                out.append(len(values))
            elif fn == "SUM":
                out.append(sum(values) if values else None)
            elif fn == "AVG":
                out.append(sum(values) / len(values) if values else None)
            elif fn == "MIN":
                out.append(min(values) if values else None)
            elif fn == "MAX":
                out.append(max(values) if values else None)
            else:
                raise PlanError(f"unknown aggregate {fn!r}")
        return tuple(out)
