"""Logical and physical plan operator trees.

Logical trees carry resolved names and raw utterances; physical trees carry
the outcome of optimization: access paths (bulk scan vs probe), join
strategies (bulk-hash-join vs probe-join with a bound side), translated
native predicates, local residual filters, and per-operator estimates.
Every node stores its output schema, computed once at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from ..catalog import TableSchema
from ..predicates import Expr
from ..table import Column
from ..translator import NativePredicate, TranslationTrace

# --- shared --------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """What a leaf scans: a catalog table or a workspace table."""

    kind: str  # "catalog" | "workspace"
    name: str
    columns: Tuple[Column, ...]
    table: Optional[TableSchema] = None  # catalog only
    row_count: Optional[int] = None  # workspace only (actual)
    wrapper_kind: Optional[str] = None  # catalog only

    def column_type(self, name: str) -> str:
        for col in self.columns:
            if col.name == name:
                return col.type
        raise KeyError(name)

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def text_columns(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.columns if c.type == "text")


@dataclass(frozen=True)
class PredicateSpec:
    """One WHERE utterance plus the schema scope it binds against.

    scope=None means the leaf's own table schema; a non-None scope carries
    the visible columns of the saved intermediate the utterance was written
    against, so compiled inlining cannot change how words bind to columns.
    """

    utterance: str
    scope: Optional[Tuple[Column, ...]] = None


@dataclass(frozen=True)
class ResolvedJoin:
    pairs: Tuple[Tuple[str, str], ...]  # (left output column, right output column)
    mode: str = "exact"  # "exact" | "entity"
    natural: bool = False

    def describe(self) -> str:
        body = ", ".join(f"{l} = {r}" for l, r in self.pairs)
        if self.mode == "entity":
            return f"ENTITY {body}"
        if self.natural:
            return f"NATURAL ({body})"
        return body


@dataclass(frozen=True)
class AggSpec:
    function: str  # COUNT | SUM | AVG | MIN | MAX
    column: Optional[str]  # None for COUNT(*)
    output: Column

    def describe(self) -> str:
        return f"{self.function}({'*' if self.column is None else self.column})"


# --- logical -------------------------------------------------------------------


@dataclass(frozen=True)
class SourceFind:
    relation: Relation
    projections: Tuple[str, ...]
    predicates: Tuple[PredicateSpec, ...] = ()  # conjunctive utterances
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Join:
    left: "LogicalNode"
    right: "LogicalNode"
    condition: ResolvedJoin
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return (self.left, self.right)


@dataclass(frozen=True)
class LocalFilter:
    predicates: Tuple[PredicateSpec, ...]
    input: "LogicalNode"
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class Aggregate:
    specs: Tuple[AggSpec, ...]
    input: "LogicalNode"
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class Project:
    names: Tuple[str, ...]
    input: "LogicalNode"
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class Sink:
    kind: str  # "save" | "output"
    target: Optional[str]  # save name, or output destination (None = stdout)
    input: "LogicalNode"
    columns: Tuple[Column, ...] = ()

    @property
    def children(self) -> tuple:
        return (self.input,)


LogicalNode = Union[SourceFind, Join, LocalFilter, Aggregate, Project, Sink]


# --- physical ------------------------------------------------------------------


@dataclass(frozen=True)
class Estimates:
    rows: float
    cost: float
    calls: float

    def describe(self) -> str:
        return f"rows≈{self.rows:g}, calls≈{self.calls:g}, cost≈{self.cost:.4f}"


@dataclass(frozen=True)
class PScan:
    relation: Relation
    fetch: Tuple[str, ...]  # columns requested from the wrapper / workspace
    native: Optional[NativePredicate]
    local: Optional[Expr]
    columns: Tuple[Column, ...]
    est: Estimates
    traces: Tuple["TranslationTrace", ...] = ()

    @property
    def children(self) -> tuple:
        return ()


@dataclass(frozen=True)
class PHashJoin:
    left: "PhysicalNode"
    right: "PhysicalNode"
    condition: ResolvedJoin
    # emit layout: named left columns, then right columns filtered/renamed;
    # scans may carry fetch-extra columns consumed only for matching
    left_names: Tuple[str, ...]
    right_keep: Tuple[Tuple[str, str], ...]  # (right source name, emitted name)
    columns: Tuple[Column, ...]
    est: Estimates

    @property
    def children(self) -> tuple:
        return (self.left, self.right)


@dataclass(frozen=True)
class PProbeJoin:
    bound: "PhysicalNode"  # produces binding values
    probed: Relation  # always a catalog leaf
    probed_fetch: Tuple[str, ...]
    probed_native: Optional[NativePredicate]
    probed_local: Optional[Expr]
    condition: ResolvedJoin  # single pair: (bound column, probed column)
    left_names: Tuple[str, ...]
    right_keep: Tuple[Tuple[str, str], ...]
    columns: Tuple[Column, ...]
    est: Estimates
    traces: Tuple["TranslationTrace", ...] = ()

    @property
    def children(self) -> tuple:
        return (self.bound,)


@dataclass(frozen=True)
class PLocalFilter:
    expr: Expr
    description: str
    input: "PhysicalNode"
    columns: Tuple[Column, ...]
    est: Estimates
    traces: Tuple["TranslationTrace", ...] = ()

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class PAggregate:
    specs: Tuple[AggSpec, ...]
    input: "PhysicalNode"
    columns: Tuple[Column, ...]
    est: Estimates

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class PProject:
    names: Tuple[str, ...]
    input: "PhysicalNode"
    columns: Tuple[Column, ...]
    est: Estimates

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class PSink:
    kind: str
    target: Optional[str]
    input: "PhysicalNode"
    columns: Tuple[Column, ...]
    est: Estimates

    @property
    def children(self) -> tuple:
        return (self.input,)


@dataclass(frozen=True)
class PShared:
    """Execute-once marker for multiply-referenced compiled subtrees."""

    key: str
    input: "PhysicalNode"
    columns: Tuple[Column, ...]
    est: Estimates

    @property
    def children(self) -> tuple:
        return (self.input,)


PhysicalNode = Union[
    PScan, PHashJoin, PProbeJoin, PLocalFilter, PAggregate, PProject, PSink, PShared
]


def walk(node) -> list:
    out = [node]
    for child in node.children:
        out.extend(walk(child))
    return out


def total_estimated_calls(node: PhysicalNode) -> float:
    return node.est.calls
