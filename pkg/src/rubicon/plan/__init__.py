"""Planning: logical build, cost model, cost-based optimization, explain."""

from .build import (
    Resolver,
    ScriptPlan,
    build_find,
    build_script,
    build_statement,
    join_output_columns,
    simplify,
)
from .cost import CostModel
from .explain import explain
from .nodes import (
    AggSpec,
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
from .optimizer import can_probe, estimate, optimize, translate_leaf

__all__ = [
    "Resolver",
    "ScriptPlan",
    "build_find",
    "build_script",
    "build_statement",
    "join_output_columns",
    "simplify",
    "CostModel",
    "explain",
    "AggSpec",
    "Aggregate",
    "Estimates",
    "Join",
    "LocalFilter",
    "LogicalNode",
    "PAggregate",
    "PHashJoin",
    "PLocalFilter",
    "PProbeJoin",
    "PProject",
    "PScan",
    "PShared",
    "PSink",
    "PhysicalNode",
    "PredicateSpec",
    "Project",
    "Relation",
    "ResolvedJoin",
    "Sink",
    "SourceFind",
    "can_probe",
    "estimate",
    "optimize",
    "translate_leaf",
]
