"""Cost-based physical planning.

The optimizer pushes each WHERE utterance into its leaf scan whenever the
wrapper's dialect can express it (anything else becomes a residual local
filter over the fetched rows), enumerates left-deep join orders and
strategies — bulk-hash-join versus probe-join with a bound side — and picks
the minimum estimated cost.  Orders and strategies are enumerated
exhaustively up to six relations and greedily beyond.  Ties break on fewer
estimated native calls, then on the lexicographic order of the leaf table
names, so the argmin is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..catalog import TableSchema
from ..errors import DialectError, PlanError
from ..predicates import (
    And,
    Expr,
    KeywordQuery,
    expr_columns,
    keyword_and,
)
from ..table import Column
from ..translator import (
    DIALECT_FOR_WRAPPER,
    DeterministicTranslator,
    NativePredicate,
    TranslationTrace,
)
from .cost import CostModel
from .nodes import (
    Aggregate,
    Estimates,
    Join,
    LocalFilter,
    LogicalNode,
    PAggregate,
    PHashJoin,
    PLocalFilter,
    PProbeJoin,
    PProject,
    PScan,
    PShared,
    PSink,
    PhysicalNode,
    PredicateSpec,
    Project,
    Relation,
    ResolvedJoin,
    Sink,
    SourceFind,
)

_EXPRESSION_DIALECTS = ("boolean-expression", "mail-filter", "fact-lookup")


def _scope_schema(relation: Relation, spec: PredicateSpec) -> TableSchema:
    """The schema an utterance binds against: its recorded scope, or the table."""
    if spec.scope is None:
        if relation.table is not None:
            return relation.table
        cols = relation.columns
    else:
        cols = spec.scope
    return TableSchema(
        qualified_name=relation.name,
        source="",
        name=relation.name,
        columns=tuple((c.name, c.type) for c in cols),
    )


def _local_dialect(relation: Relation) -> str:
    if relation.wrapper_kind == "mailbox":
        return "mail-filter"
    if relation.wrapper_kind == "knowledge-stub":
        return "fact-lookup"
    return "boolean-expression"


def _combine_native(
    parts: List[NativePredicate], dialect: str
) -> Optional[NativePredicate]:
    if not parts:
        return None
    if len(parts) == 1:
        return parts[0]
    if dialect == "keyword-query":
        body = parts[0].body
        for p in parts[1:]:
            assert isinstance(body, KeywordQuery) and isinstance(p.body, KeywordQuery)
            body = keyword_and(body, p.body)
    else:
        body = And(children=tuple(p.body for p in parts))
    merged_trace = TranslationTrace(
        utterance=" AND ".join(p.trace.utterance for p in parts),
        matched_patterns=tuple(
            pat for p in parts for pat in p.trace.matched_patterns
        ),
        column_bindings=tuple(
            b for p in parts for b in p.trace.column_bindings
        ),
        residual_terms=tuple(t for p in parts for t in p.trace.residual_terms),
        translator=parts[0].trace.translator,
        tokens_in=sum(p.trace.tokens_in for p in parts),
        tokens_out=sum(p.trace.tokens_out for p in parts),
        provider_cost=sum(p.trace.provider_cost for p in parts),
    )
    return NativePredicate(dialect=dialect, body=body, trace=merged_trace)


@dataclass(frozen=True)
class ScanParts:
    """Outcome of translating a leaf's utterances."""

    native: Optional[NativePredicate]
    local: Optional[Expr]
    local_traces: Tuple[TranslationTrace, ...]

    def traces(self) -> Tuple[TranslationTrace, ...]:
        out: Tuple[TranslationTrace, ...] = ()
        if self.native is not None:
            out += (self.native.trace,)
        return out + self.local_traces


def translate_leaf(
    leaf: SourceFind, translator, pushdown: bool = True
) -> ScanParts:
    relation = leaf.relation
    natives: List[NativePredicate] = []
    locals_: List[Expr] = []
    local_traces: List[TranslationTrace] = []
    wrapper_dialect = (
        DIALECT_FOR_WRAPPER.get(relation.wrapper_kind or "", "boolean-expression")
        if relation.kind == "catalog"
        else None
    )
    for spec in leaf.predicates:
        schema = _scope_schema(relation, spec)
        # A keyword query searches the wrapper's full text index; a predicate
        # scoped to a saved intermediate may only push down when that scope
        # still covers every indexed text column, otherwise pushing would see
        # text the intermediate had projected away.
        keyword_scope_ok = (
            spec.scope is None
            or wrapper_dialect != "keyword-query"
            or relation.table is None
            or set(c.name for c in spec.scope) >= set(relation.table.text_columns())
        )
        if pushdown and wrapper_dialect is not None and keyword_scope_ok:
            try:
                natives.append(translator.translate(spec.utterance, schema, wrapper_dialect))
                continue
            except DialectError:
                pass  # not expressible natively; evaluate locally below
        local_np = translator.translate(
            spec.utterance, schema, _local_dialect(relation)
        )
        locals_.append(local_np.body)
        local_traces.append(local_np.trace)
    native = _combine_native(natives, wrapper_dialect or "boolean-expression")
    local: Optional[Expr] = None
    if locals_:
        local = locals_[0] if len(locals_) == 1 else And(children=tuple(locals_))
    return ScanParts(native=native, local=local, local_traces=tuple(local_traces))


# --- probe capability -----------------------------------------------------------


def can_probe(relation: Relation, column: str, mode: str) -> bool:
    if relation.kind != "catalog":
        return False
    kind = relation.wrapper_kind
    if kind == "http-api":
        return column == "title" and mode == "exact"
    if kind in ("relational-fixture", "document-corpus", "mailbox", "knowledge-stub"):
        return True
    return False


# --- estimation -----------------------------------------------------------------


def scan_estimates(
    relation: Relation,
    native: Optional[NativePredicate],
    local: Optional[Expr],
    model: CostModel,
) -> Estimates:
    base = model.row_estimate(relation)
    sel_native = model.selectivity(native.body if native else None)
    transferred = base * sel_native
    cost = model.call_setup(relation) + transferred * model.per_row(relation)
    rows = transferred
    if local is not None:
        cost += transferred * model.local_row_cost
        rows = transferred * model.selectivity(local)
    calls = 1.0 if relation.kind == "catalog" else 0.0
    return Estimates(rows=rows, cost=cost, calls=calls)


def estimate_node(node: PhysicalNode, model: CostModel) -> Estimates:
    """Recompute estimates for a physical operator tree (pure, deterministic)."""
    if isinstance(node, PScan):
        return scan_estimates(node.relation, node.native, node.local, model)
    if isinstance(node, PHashJoin):
        left = estimate_node(node.left, model)
        right = estimate_node(node.right, model)
        cost = left.cost + right.cost + (left.rows + right.rows) * model.join_row_cost
        rows = min(left.rows, right.rows)
        return Estimates(rows=rows, cost=cost, calls=left.calls + right.calls)
    if isinstance(node, PProbeJoin):
        bound = estimate_node(node.bound, model)
        probed_sel = model.selectivity(
            node.probed_native.body if node.probed_native else None
        ) * (model.selectivity(node.probed_local) if node.probed_local else 1.0)
        probed_rows = model.row_estimate(node.probed) * probed_sel
        k_rows = probed_rows * model.sel_equality
        per_probe = model.call_setup(node.probed) + k_rows * model.per_row(node.probed)
        cost = bound.cost + bound.rows * per_probe
        rows = min(bound.rows, probed_rows)
        return Estimates(rows=rows, cost=cost, calls=bound.calls + bound.rows)
    if isinstance(node, PLocalFilter):
        child = estimate_node(node.input, model)
        return Estimates(
            rows=child.rows * model.selectivity(node.expr),
            cost=child.cost + child.rows * model.local_row_cost,
            calls=child.calls,
        )
    if isinstance(node, PAggregate):
        child = estimate_node(node.input, model)
        return Estimates(
            rows=1.0,
            cost=child.cost + child.rows * model.local_row_cost,
            calls=child.calls,
        )
    if isinstance(node, (PProject, PSink, PShared)):
        child = estimate_node(node.input, model)
        return Estimates(rows=child.rows, cost=child.cost, calls=child.calls)
    raise TypeError(f"not a physical node: {node!r}")


def estimate(plan: PhysicalNode, model: CostModel) -> Tuple[float, List[Tuple[PhysicalNode, Estimates]]]:
    """Total estimated cost plus a per-operator breakdown."""
    breakdown: List[Tuple[PhysicalNode, Estimates]] = []

    def visit(node: PhysicalNode) -> Estimates:
        for child in node.children:
            visit(child)
        est = estimate_node(node, model)
        breakdown.append((node, est))
        return est

    total = visit(plan)
    return total.cost, breakdown


def _with_est(node: PhysicalNode, model: CostModel) -> PhysicalNode:
    return replace(node, est=estimate_node(node, model))


# --- chain extraction and enumeration ---------------------------------------------


@dataclass
class _Unit:
    index: int
    node: LogicalNode
    visible: Tuple[Column, ...]
    physical: Optional[PhysicalNode]  # pre-built for non-leaf units
    leaf: Optional[SourceFind]
    parts: Optional[ScanParts]
    extras: Set[str]

    @property
    def available(self) -> Tuple[Column, ...]:
        if self.leaf is not None:
            return self.leaf.relation.columns
        return self.visible

    def has(self, name: str) -> bool:
        return any(c.name == name for c in self.available)


@dataclass
class _Edge:
    condition: ResolvedJoin
    left_unit: int  # unit owning the pair left columns
    right_unit: int
    used: bool = False


def _flatten_chain(node: LogicalNode) -> Tuple[List[LogicalNode], List[ResolvedJoin]]:
    if isinstance(node, Join):
        left_units, left_conds = _flatten_chain(node.left)
        return left_units + [node.right], left_conds + [node.condition]
    return [node], []


def _label(unit_index: int, name: str, visible_names: Set[str]) -> str:
    return name if name in visible_names else f"#{unit_index}:{name}"


class _ChainPlanner:
    """Enumerates join orders and strategies for one left-deep chain."""

    def __init__(self, units: List[_Unit], edges: List[_Edge], model: CostModel):
        self.units = units
        self.edges = edges
        self.model = model

    # physical emit schema for a unit: visible columns + labeled extras
    def unit_emit(self, unit: _Unit) -> Tuple[Column, ...]:
        cols = list(unit.visible)
        visible_names = {c.name for c in unit.visible}
        if unit.leaf is not None:
            for name in sorted(unit.extras):
                if name not in visible_names:
                    cols.append(
                        Column(
                            _label(unit.index, name, visible_names),
                            unit.leaf.relation.column_type(name),
                        )
                    )
        return tuple(cols)

    def unit_scan(self, unit: _Unit, fetch_extra: Set[str]) -> PScan:
        leaf = unit.leaf
        assert leaf is not None and unit.parts is not None
        fetch = list(leaf.projections)
        needed = set(fetch_extra)
        if unit.parts.local is not None:
            needed |= expr_columns(unit.parts.local)
        for name in sorted(needed):
            if name not in fetch:
                fetch.append(name)
        columns = tuple(
            Column(c, leaf.relation.column_type(c)) for c in fetch
        )
        scan = PScan(
            relation=leaf.relation,
            fetch=tuple(fetch),
            native=unit.parts.native,
            local=unit.parts.local,
            columns=columns,
            est=Estimates(0, 0, 0),
            traces=unit.parts.traces(),
        )
        return _with_est(scan, self.model)

    def usable_edges(self, prefix: Set[int], new_unit: int) -> List[Tuple[_Edge, bool]]:
        """Edges joining `new_unit` to the prefix; bool = new unit is on the right."""
        out = []
        for edge in self.edges:
            if edge.used:
                continue
            if edge.right_unit == new_unit and edge.left_unit in prefix:
                out.append((edge, True))
            elif edge.left_unit == new_unit and edge.right_unit in prefix:
                out.append((edge, False))
        return out

    def orders(self) -> List[List[int]]:
        n = len(self.units)
        results: List[List[int]] = []

        def extend(order: List[int], prefix: Set[int]) -> None:
            if len(order) == n:
                results.append(list(order))
                return
            for u in range(n):
                if u in prefix:
                    continue
                if order and not self.usable_edges(prefix, u):
                    continue
                order.append(u)
                prefix.add(u)
                extend(order, prefix)
                prefix.remove(u)
                order.pop()

        extend([], set())
        return results

    def build_candidate(
        self, order: List[int], strategies: Sequence[str]
    ) -> Optional[PhysicalNode]:
        """Assemble one physical join tree; None when a strategy is infeasible."""
        for e in self.edges:
            e.used = False
        # per-unit fetch extras: pair columns referenced on leaf units
        extras: Dict[int, Set[str]] = {u.index: set(u.extras) for u in self.units}

        first = self.units[order[0]]
        plan = self._unit_plan(first, extras[first.index])
        prefix = {first.index}
        emitted: List[Tuple[int, Column]] = [
            (first.index, c) for c in self.unit_emit(first)
        ]

        for pos, u_idx in enumerate(order[1:]):
            unit = self.units[u_idx]
            usable = self.usable_edges(prefix, u_idx)
            if not usable:
                return None
            pairs: List[Tuple[str, str]] = []  # (prefix label, unit label)
            modes = set()
            natural = True
            for edge, unit_on_right in usable:
                edge.used = True
                modes.add(edge.condition.mode)
                natural = natural and edge.condition.natural
                for l, r in edge.condition.pairs:
                    if unit_on_right:
                        prefix_owner, prefix_col, unit_col = edge.left_unit, l, r
                    else:
                        prefix_owner, prefix_col, unit_col = edge.right_unit, r, l
                    owner_unit = self.units[prefix_owner]
                    plabel = _label(
                        prefix_owner,
                        prefix_col,
                        {c.name for c in owner_unit.visible},
                    )
                    ulabel = _label(
                        u_idx, unit_col, {c.name for c in unit.visible}
                    )
                    pairs.append((plabel, ulabel))
            if len(modes) > 1:
                return None
            mode = modes.pop()
            cond = ResolvedJoin(pairs=tuple(pairs), mode=mode, natural=natural)

            strategy = strategies[pos]
            unit_cols = self.unit_emit(unit)
            drop = {r for _, r in cond.pairs} if natural else set()
            # keep entries are (plain source column, emitted label)
            right_keep = tuple(
                (
                    c.name.split(":", 1)[1] if c.name.startswith("#") else c.name,
                    c.name,
                )
                for c in unit_cols
                if c.name not in drop
            )
            out_columns = tuple(c for _, c in emitted) + tuple(
                Column(e, next(c.type for c in unit_cols if c.name == e))
                for _, e in right_keep
            )
            left_names = tuple(c.name for _, c in emitted)

            if strategy == "probe":
                if unit.leaf is None or len(cond.pairs) != 1:
                    return None
                bound_label, unit_label = cond.pairs[0]
                probed_col = unit_label.split(":", 1)[-1] if unit_label.startswith("#") else unit_label
                if not can_probe(unit.leaf.relation, probed_col, cond.mode):
                    return None
                assert unit.parts is not None
                fetch = [c.name.split(":", 1)[-1] if c.name.startswith("#") else c.name
                         for c in unit_cols]
                if unit.parts.local is not None:
                    for col in sorted(expr_columns(unit.parts.local)):
                        if col not in fetch:
                            fetch.append(col)
                if probed_col not in fetch:
                    fetch.append(probed_col)
                node = PProbeJoin(
                    bound=plan,
                    probed=unit.leaf.relation,
                    probed_fetch=tuple(fetch),
                    probed_native=unit.parts.native,
                    probed_local=unit.parts.local,
                    traces=unit.parts.traces(),
                    condition=ResolvedJoin(
                        pairs=((bound_label, probed_col),),
                        mode=cond.mode,
                        natural=cond.natural,
                    ),
                    left_names=left_names,
                    right_keep=right_keep,
                    columns=out_columns,
                    est=Estimates(0, 0, 0),
                )
                plan = _with_est(node, self.model)
            else:
                right_plan = self._unit_plan(unit, extras[u_idx])
                node = PHashJoin(
                    left=plan,
                    right=right_plan,
                    condition=cond,
                    left_names=left_names,
                    right_keep=right_keep,
                    columns=out_columns,
                    est=Estimates(0, 0, 0),
                )
                plan = _with_est(node, self.model)
            prefix.add(u_idx)
            emitted.extend(
                (u_idx, Column(e, next(c.type for c in unit_cols if c.name == e)))
                for _, e in right_keep
            )
        return plan

    def _unit_plan(self, unit: _Unit, fetch_extra: Set[str]) -> PhysicalNode:
        if unit.leaf is not None:
            scan = self.unit_scan(unit, fetch_extra)
            # expose extras under their labels
            visible_names = {c.name for c in unit.visible}
            labeled = tuple(
                Column(_label(unit.index, c.name, visible_names), c.type)
                for c in scan.columns
            )
            return replace(scan, columns=labeled)
        assert unit.physical is not None
        return unit.physical

    def leaf_name_key(self, order: List[int]) -> Tuple[str, ...]:
        names = []
        for idx in order:
            unit = self.units[idx]
            if unit.leaf is not None:
                names.append(unit.leaf.relation.name)
            else:
                names.append(f"<subplan {idx}>")
        return tuple(names)


EXHAUSTIVE_LIMIT = 6


def _optimize_chain(
    node: LogicalNode,
    model: CostModel,
    translator,
    shared: Dict[int, PhysicalNode],
    shared_ids: Set[int],
    pushdown: bool = True,
) -> PhysicalNode:
    block_nodes, conditions = _flatten_chain(node)
    units: List[_Unit] = []
    for i, block in enumerate(block_nodes):
        if isinstance(block, SourceFind) and id(block) not in shared_ids:
            parts = translate_leaf(block, translator, pushdown=pushdown)
            units.append(
                _Unit(
                    index=i,
                    node=block,
                    visible=block.columns,
                    physical=None,
                    leaf=block,
                    parts=parts,
                    extras=set(),
                )
            )
        else:
            phys = _optimize_node(block, model, translator, shared, shared_ids, pushdown)
            units.append(
                _Unit(
                    index=i,
                    node=block,
                    visible=block.columns,
                    physical=phys,
                    leaf=None,
                    parts=None,
                    extras=set(),
                )
            )

    # resolve edge ownership and extras; all left columns of one condition
    # must live on a single unit so plans stay reorderable
    edges: List[_Edge] = []
    for i, cond in enumerate(conditions):
        right_unit = i + 1
        owner = None
        for l, _ in cond.pairs:
            found = None
            for j in range(right_unit - 1, -1, -1):
                if units[j].has(l):
                    found = j
                    break
            if found is None:
                raise PlanError(f"join column {l!r} not available on the left side")
            if owner is None:
                owner = found
            elif owner != found:
                raise PlanError(
                    "join condition references left columns from different "
                    "FIND blocks; split it into separate joins"
                )
            if units[found].leaf is not None:
                units[found].extras.add(l)
        for _, r in cond.pairs:
            if not units[right_unit].has(r):
                raise PlanError(f"join column {r!r} not available on the right side")
            if units[right_unit].leaf is not None:
                units[right_unit].extras.add(r)
        assert owner is not None
        edges.append(_Edge(condition=cond, left_unit=owner, right_unit=right_unit))

    if len(units) == 1:
        unit = units[0]
        if unit.leaf is None:
            assert unit.physical is not None
            return unit.physical
        return _finalize_scan(unit, units, model)

    planner = _ChainPlanner(units, edges, model)
    orders = planner.orders()
    if not orders:
        raise PlanError("join chain is not connected")

    candidates: List[Tuple[Tuple, PhysicalNode]] = []
    if len(units) <= EXHAUSTIVE_LIMIT:
        for order in orders:
            for strategies in itertools.product(("hash", "probe"), repeat=len(order) - 1):
                plan = planner.build_candidate(order, strategies)
                if plan is None:
                    continue
                key = (
                    round(plan.est.cost, 9),
                    round(plan.est.calls, 9),
                    planner.leaf_name_key(order),
                    strategies,
                )
                candidates.append((key, plan))
    else:
        plan = _greedy_plan(planner)
        candidates.append(((0.0,), plan))
    candidates.sort(key=lambda kv: kv[0])
    best = candidates[0][1]
    # trim to the logical visible layout
    names = tuple(c.name for c in node.columns)
    if tuple(c.name for c in best.columns) != names:
        best = _with_est(
            PProject(names=names, input=best, columns=node.columns, est=Estimates(0, 0, 0)),
            model,
        )
    return best


def _greedy_plan(planner: _ChainPlanner) -> PhysicalNode:
    """Greedy left-deep construction for chains past the exhaustive limit."""
    n = len(planner.units)
    best_plan: Optional[PhysicalNode] = None
    best_key: Optional[Tuple] = None
    # seed with each unit, then repeatedly add the cheapest join step
    for seed in range(n):
        order = [seed]
        prefix = {seed}
        plan_key: List[str] = []
        ok = True
        while len(order) < n and ok:
            step_best = None
            for u in range(n):
                if u in prefix or not planner.usable_edges(prefix, u):
                    continue
                for strategy in ("hash", "probe"):
                    candidate_order = order + [u]
                    strategies = ["hash"] * (len(order) - 1) + [strategy]
                    plan = planner.build_candidate(candidate_order, strategies)
                    if plan is None:
                        continue
                    key = (
                        round(plan.est.cost, 9),
                        round(plan.est.calls, 9),
                        planner.leaf_name_key(candidate_order),
                    )
                    if step_best is None or key < step_best[0]:
                        step_best = (key, u)
            if step_best is None:
                ok = False
                break
            order.append(step_best[1])
            prefix.add(step_best[1])
        if not ok:
            continue
        plan = planner.build_candidate(order, ["hash"] * (n - 1))
        if plan is None:
            continue
        key = (round(plan.est.cost, 9), round(plan.est.calls, 9), planner.leaf_name_key(order))
        if best_key is None or key < best_key:
            best_key, best_plan = key, plan
    if best_plan is None:
        raise PlanError("join chain is not connected")
    return best_plan


def _finalize_scan(unit: _Unit, units: List[_Unit], model: CostModel) -> PhysicalNode:
    planner = _ChainPlanner(units, [], model)
    scan = planner.unit_scan(unit, set())
    names = tuple(c.name for c in unit.visible)
    if tuple(c.name for c in scan.columns) != names:
        return _with_est(
            PProject(names=names, input=scan, columns=unit.visible, est=Estimates(0, 0, 0)),
            model,
        )
    return scan


def _optimize_node(
    node: LogicalNode,
    model: CostModel,
    translator,
    shared: Dict[int, PhysicalNode],
    shared_ids: Set[int],
    pushdown: bool = True,
) -> PhysicalNode:
    if id(node) in shared_ids:
        if id(node) in shared:
            return shared[id(node)]
        inner = _optimize_node_inner(
            node, model, translator, shared, shared_ids - {id(node)}, pushdown
        )
        wrapped = _with_est(
            PShared(
                key=f"shared-{len(shared)}",
                input=inner,
                columns=inner.columns,
                est=Estimates(0, 0, 0),
            ),
            model,
        )
        shared[id(node)] = wrapped
        return wrapped
    return _optimize_node_inner(node, model, translator, shared, shared_ids, pushdown)


def _optimize_node_inner(
    node: LogicalNode,
    model: CostModel,
    translator,
    shared: Dict[int, PhysicalNode],
    shared_ids: Set[int],
    pushdown: bool = True,
) -> PhysicalNode:
    if isinstance(node, (Join, SourceFind)):
        return _optimize_chain(node, model, translator, shared, shared_ids, pushdown)
    if isinstance(node, Sink):
        inner = _optimize_node(node.input, model, translator, shared, shared_ids, pushdown)
        return _with_est(
            PSink(kind=node.kind, target=node.target, input=inner,
                  columns=inner.columns, est=Estimates(0, 0, 0)),
            model,
        )
    if isinstance(node, Aggregate):
        inner = _optimize_node(node.input, model, translator, shared, shared_ids, pushdown)
        return _with_est(
            PAggregate(specs=node.specs, input=inner, columns=node.columns,
                       est=Estimates(0, 0, 0)),
            model,
        )
    if isinstance(node, Project):
        inner = _optimize_node(node.input, model, translator, shared, shared_ids, pushdown)
        if tuple(c.name for c in inner.columns) == tuple(node.names):
            return inner
        return _with_est(
            PProject(names=node.names, input=inner, columns=node.columns,
                     est=Estimates(0, 0, 0)),
            model,
        )
    if isinstance(node, LocalFilter):
        inner = _optimize_node(node.input, model, translator, shared, shared_ids, pushdown)
        exprs: List[Expr] = []
        descriptions: List[str] = []
        traces: List[TranslationTrace] = []
        for spec in node.predicates:
            scope = spec.scope or node.input.columns
            schema = TableSchema(
                qualified_name="<intermediate>",
                source="",
                name="<intermediate>",
                columns=tuple((c.name, c.type) for c in scope),
            )
            np = translator.translate(spec.utterance, schema, "boolean-expression")
            exprs.append(np.body)
            descriptions.append(spec.utterance)
            traces.append(np.trace)
        expr = exprs[0] if len(exprs) == 1 else And(children=tuple(exprs))
        return _with_est(
            PLocalFilter(expr=expr, description="; ".join(descriptions), input=inner,
                         columns=node.columns, est=Estimates(0, 0, 0),
                         traces=tuple(traces)),
            model,
        )
    raise TypeError(f"not a logical node: {node!r}")


def optimize(
    plan: LogicalNode,
    model: CostModel,
    translator=None,
    shared_ids: Optional[Set[int]] = None,
    shared: Optional[Dict[int, PhysicalNode]] = None,
    pushdown: bool = True,
) -> PhysicalNode:
    """Choose access paths and join order/strategy for one logical root."""
    translator = translator or DeterministicTranslator()
    return _optimize_node(
        plan, model, translator, shared if shared is not None else {},
        shared_ids or set(), pushdown,
    )
