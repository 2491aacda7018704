"""Building logical plans from parsed statements.

Resolution happens here: FROM references are looked up against script-local
SAVE names (compiled mode), workspace tables, then the catalog (qualified
name, bare name, or a source with exactly one table).  Compiled scripts fuse
into composite plans: a SAVE is a script-local CTE that is inlined into its
single consumer (letting its predicate merge into the leaf scan), executed
once and shared when referenced more than once, and skipped when unused;
OUTPUT statements and the final statement are the script's sinks.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from ..aql.ast import (
    AggregateProj,
    ColumnProj,
    DeleteStatement,
    EntityMatch,
    ExplicitPairs,
    FindQuery,
    JoinCondition,
    NaturalByName,
    OutputStatement,
    SaveStatement,
    SchemaQuery,
    StarProj,
    Statement,
)
from ..catalog import Catalog
from ..errors import NotFoundError, PlanError
from ..table import Column
from .nodes import (
    AggSpec,
    PredicateSpec,
    Aggregate,
    Join,
    LocalFilter,
    LogicalNode,
    Project,
    Relation,
    ResolvedJoin,
    Sink,
    SourceFind,
)


@dataclass
class Resolver:
    catalog: Catalog
    workspace: Dict[str, Tuple[Column, ...]] = field(default_factory=dict)
    workspace_counts: Dict[str, int] = field(default_factory=dict)
    ctes: Dict[str, LogicalNode] = field(default_factory=dict)
    pending_saves: Set[str] = field(default_factory=set)

    def lookup(self, ref: str) -> Union[Relation, LogicalNode]:
        if ref in self.ctes:
            return self.ctes[ref]
        if ref in self.pending_saves:
            raise PlanError(f"SAVE name {ref!r} referenced before its definition")
        if ref in self.workspace:
            return Relation(
                kind="workspace",
                name=ref,
                columns=self.workspace[ref],
                row_count=self.workspace_counts.get(ref, 0),
            )
        schema = self.catalog.resolve_table(ref)  # raises NotFoundError
        return Relation(
            kind="catalog",
            name=schema.qualified_name,
            columns=schema.result_columns(),
            table=schema,
            wrapper_kind=self.catalog.source(schema.source).wrapper_kind,
        )


# --- block and condition construction -------------------------------------------


def _agg_output(spec_fn: str, column: Optional[str], columns: Sequence[Column]) -> Column:
    label = f"{spec_fn.lower()}({'*' if column is None else column})"
    if spec_fn == "COUNT":
        return Column(label, "integer")
    col_type = None
    for c in columns:
        if c.name == column:
            col_type = c.type
    if col_type is None:
        raise PlanError(f"aggregate column {column!r} not found")
    if spec_fn in ("SUM", "AVG"):
        if col_type not in ("integer", "real"):
            raise PlanError(
                f"{spec_fn} requires a numeric column, {column!r} is {col_type}"
            )
        return Column(label, "real" if spec_fn == "AVG" else col_type)
    return Column(label, col_type)


def _column_of(columns: Sequence[Column], name: str) -> Column:
    for c in columns:
        if c.name == name:
            return c
    raise NotFoundError(f"unknown column {name!r}")


def _block_visible(block: FindQuery, available: Sequence[Column]) -> Tuple[str, ...]:
    names: List[str] = []
    for proj in block.projections:
        if isinstance(proj, StarProj):
            return tuple(c.name for c in available)
        if isinstance(proj, ColumnProj):
            _column_of(available, proj.name)
            names.append(proj.name)
        else:  # aggregates fetch their argument columns
            if proj.column is not None:
                _column_of(available, proj.column)
                if proj.column not in names:
                    names.append(proj.column)
    if not names:  # pure COUNT(*) block needs some width to count rows
        return tuple(c.name for c in available)
    return tuple(names)


def _has_aggregates(block: FindQuery) -> bool:
    return any(isinstance(p, AggregateProj) for p in block.projections)


def _build_block(block: FindQuery, resolver: Resolver) -> LogicalNode:
    target = resolver.lookup(block.source)
    if isinstance(target, Relation):
        visible = _block_visible(block, target.columns)
        columns = tuple(_column_of(target.columns, n) for n in visible)
        preds: Tuple[PredicateSpec, ...] = ()
        if block.predicate is not None:
            preds = (PredicateSpec(block.predicate, scope=None),)
        return SourceFind(
            relation=target, projections=visible, predicates=preds, columns=columns
        )
    # CTE subtree: filter, then project
    node: LogicalNode = target
    if block.predicate is not None:
        node = LocalFilter(
            predicates=(PredicateSpec(block.predicate, scope=node.columns),),
            input=node,
            columns=node.columns,
        )
    visible = _block_visible(block, node.columns)
    columns = tuple(_column_of(node.columns, n) for n in visible)
    return Project(names=visible, input=node, columns=columns)


def _available_columns(node: LogicalNode) -> Tuple[Column, ...]:
    """Columns a join condition may reference on this side.

    Leaf scans expose their full table (unprojected join columns are fetched
    internally and trimmed at the top); composed inputs expose only their
    visible output.
    """
    if isinstance(node, SourceFind):
        return node.relation.columns
    return node.columns


def _resolve_condition(
    cond: JoinCondition, left: LogicalNode, right: LogicalNode
) -> ResolvedJoin:
    left_avail = _available_columns(left)
    right_avail = _available_columns(right)
    if isinstance(cond, NaturalByName):
        common = [
            c.name
            for c in left.columns
            if any(r.name == c.name for r in right.columns)
        ]
        if not common:
            raise PlanError(
                "natural join has no identically named columns on both sides; "
                "specify ON <left> = <right>"
            )
        return ResolvedJoin(
            pairs=tuple((n, n) for n in common), mode="exact", natural=True
        )
    if isinstance(cond, EntityMatch):
        lcol = _column_of(left_avail, cond.left)
        rcol = _column_of(right_avail, cond.right)
        if lcol.type != "text" or rcol.type != "text":
            raise PlanError(
                f"entity join requires text columns, got "
                f"{cond.left}:{lcol.type} and {cond.right}:{rcol.type}"
            )
        return ResolvedJoin(pairs=((cond.left, cond.right),), mode="entity")
    pairs = []
    for lname, rname in cond.pairs:
        _column_of(left_avail, lname)
        _column_of(right_avail, rname)
        pairs.append((lname, rname))
    return ResolvedJoin(pairs=tuple(pairs), mode="exact")


def join_output_columns(
    left_cols: Sequence[Column], right_cols: Sequence[Column], cond: ResolvedJoin
) -> Tuple[Tuple[Column, ...], Tuple[Tuple[str, str], ...]]:
    """Join output schema plus the (source, emitted) mapping for right columns.

    Natural-join columns appear once (from the left side).  Any other name
    collision is rejected: projecting the same column name from both sides
    of a non-natural join would make later references ambiguous.
    """
    drop = {r for _, r in cond.pairs} if cond.natural else set()
    taken = {c.name for c in left_cols}
    out = list(left_cols)
    keep: List[Tuple[str, str]] = []
    for col in right_cols:
        if col.name in drop:
            continue
        if col.name in taken:
            raise PlanError(
                f"both join sides project a column named {col.name!r}; "
                f"project distinct columns or join with the default "
                f"natural condition"
            )
        taken.add(col.name)
        out.append(col)
        keep.append((col.name, col.name))
    return tuple(out), tuple(keep)


def build_find(query: FindQuery, resolver: Resolver) -> LogicalNode:
    blocks, conds = query.chain()
    nodes = [_build_block(b, resolver) for b in blocks]
    tree = nodes[0]
    for i in range(1, len(nodes)):
        cond = _resolve_condition(conds[i - 1], tree, nodes[i])
        columns, _ = join_output_columns(tree.columns, nodes[i].columns, cond)
        tree = Join(left=tree, right=nodes[i], condition=cond, columns=columns)

    first = blocks[0]
    if _has_aggregates(first):
        specs = []
        for proj in first.projections:
            assert isinstance(proj, AggregateProj)
            specs.append(
                AggSpec(
                    function=proj.function,
                    column=proj.column,
                    output=_agg_output(proj.function, proj.column, tree.columns),
                )
            )
        return Aggregate(
            specs=tuple(specs), input=tree, columns=tuple(s.output for s in specs)
        )

    # join_output_columns already produced the user-visible layout
    return tree


# --- simplification --------------------------------------------------------------


def simplify(node: LogicalNode, shared_ids: Set[int]) -> LogicalNode:
    """Fold filters/projections into leaf scans, never across shared subtrees."""
    if id(node) in shared_ids:
        return node
    if isinstance(node, SourceFind):
        return node
    if isinstance(node, LocalFilter):
        inner = simplify(node.input, shared_ids)
        if isinstance(inner, SourceFind) and id(node.input) not in shared_ids:
            return replace(inner, predicates=inner.predicates + tuple(node.predicates))
        return replace(node, input=inner)
    if isinstance(node, Project):
        inner = simplify(node.input, shared_ids)
        if isinstance(inner, Project):
            inner = inner.input  # outer names are a subset by construction
            return simplify(replace(node, input=inner), shared_ids)
        if (
            isinstance(inner, SourceFind)
            and id(node.input) not in shared_ids
            and set(node.names) <= set(inner.projections)
        ):
            return replace(inner, projections=node.names, columns=node.columns)
        if tuple(node.names) == tuple(c.name for c in inner.columns):
            return inner
        return replace(node, input=inner)
    if isinstance(node, Join):
        return replace(
            node,
            left=simplify(node.left, shared_ids),
            right=simplify(node.right, shared_ids),
        )
    if isinstance(node, (Aggregate, Sink)):
        return replace(node, input=simplify(node.input, shared_ids))
    raise TypeError(f"not a logical node: {node!r}")


# --- statements and compiled scripts ----------------------------------------------


def build_statement(stmt: Statement, resolver: Resolver) -> LogicalNode:
    """Logical plan for one interactive statement (FindQuery or Save)."""
    if isinstance(stmt, FindQuery):
        plan = build_find(stmt, resolver)
        return simplify(plan, set())
    if isinstance(stmt, SaveStatement):
        inner = build_find(stmt.query, resolver)
        return simplify(
            Sink(kind="save", target=stmt.new_table, input=inner, columns=inner.columns),
            set(),
        )
    raise PlanError(f"no plan for statement type {type(stmt).__name__}")


@dataclass
class ScriptPlan:
    """A compiled script: sink roots in execution order, final root last."""

    roots: List[LogicalNode]
    shared_ids: Set[int]
    final_name: Optional[str]  # SAVE name of the final statement, if any


def _count_cte_references(statements: Sequence[Statement]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    defined: Set[str] = set()

    def visit_query(q: FindQuery):
        for block in q.chain()[0]:
            if block.source in defined:
                counts[block.source] = counts.get(block.source, 0) + 1

    for stmt in statements:
        if isinstance(stmt, FindQuery):
            visit_query(stmt)
        elif isinstance(stmt, SaveStatement):
            visit_query(stmt.query)
            defined.add(stmt.new_table)
            counts.setdefault(stmt.new_table, 0)
        elif isinstance(stmt, OutputStatement):
            if stmt.table in defined:
                counts[stmt.table] = counts.get(stmt.table, 0) + 1
        elif isinstance(stmt, DeleteStatement):
            defined.discard(stmt.table)
    return counts


def build_script(statements: Sequence[Statement], resolver: Resolver) -> ScriptPlan:
    if not statements:
        raise PlanError("empty script")
    for stmt in statements:
        if isinstance(stmt, SchemaQuery):
            raise PlanError("`?` introspection is interactive-only; "
                            "compiled scripts contain queries and housekeeping")
    counts = _count_cte_references(statements)
    save_names = {
        s.new_table for s in statements if isinstance(s, SaveStatement)
    }
    resolver.pending_saves = set(save_names)

    roots: List[LogicalNode] = []
    shared_ids: Set[int] = set()
    final_root: Optional[LogicalNode] = None
    final_name: Optional[str] = None

    last_query_index = max(
        (
            i
            for i, s in enumerate(statements)
            if isinstance(s, (FindQuery, SaveStatement, OutputStatement))
        ),
        default=-1,
    )
    if last_query_index < 0:
        raise PlanError("script has no executable statement")

    for i, stmt in enumerate(statements):
        is_final = i == last_query_index
        if isinstance(stmt, SaveStatement):
            resolver.pending_saves.discard(stmt.new_table)
            subtree = simplify(build_find(stmt.query, resolver), shared_ids)
            resolver.ctes[stmt.new_table] = subtree
            if counts.get(stmt.new_table, 0) > 1:
                shared_ids.add(id(subtree))
            if is_final:
                final_root = Sink(
                    kind="save",
                    target=stmt.new_table,
                    input=subtree,
                    columns=subtree.columns,
                )
                final_name = stmt.new_table
        elif isinstance(stmt, FindQuery):
            plan = simplify(build_find(stmt, resolver), shared_ids)
            if is_final:
                final_root = plan
        elif isinstance(stmt, OutputStatement):
            target = resolver.lookup(stmt.table)
            if isinstance(target, Relation):
                if target.kind != "workspace":
                    raise PlanError(
                        f"OUTPUT targets a workspace or SAVEd table, not the "
                        f"catalog table {stmt.table!r}"
                    )
                subtree: LogicalNode = SourceFind(
                    relation=target,
                    projections=tuple(c.name for c in target.columns),
                    predicates=(),
                    columns=target.columns,
                )
            else:
                subtree = target
            sink = Sink(
                kind="output",
                target=stmt.destination,
                input=subtree,
                columns=subtree.columns,
            )
            roots.append(sink)
            if is_final:
                final_root = sink
                roots.pop()
        elif isinstance(stmt, DeleteStatement):
            resolver.ctes.pop(stmt.table, None)
        else:
            raise PlanError(f"no compiled plan for {type(stmt).__name__}")

    assert final_root is not None
    roots.append(final_root)
    return ScriptPlan(roots=roots, shared_ids=shared_ids, final_name=final_name)
