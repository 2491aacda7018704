"""Cost model: per-table transfer parameters plus selectivity defaults.

Formulas (deterministic, monotone in row estimates and call counts):

* bulk scan:    call_setup + row_estimate × selectivity(native) × per_row_cost
                (+ transferred × local_row_cost when a residual filter runs)
* probe join:   bound-side cost + |binding estimate| × (call_setup(probed)
                + k_rows × per_row_cost(probed)), k_rows being the expected
                per-probe match count
* bulk hash join: child costs + (|L| + |R|) × join_row_cost

Selectivity defaults: equality 0.1, inequality 0.3, contains 0.3, keyword
query 0.05 per term capped at 1.0 (additive), conjunction = product,
disjunction = min(1, sum).  All parameters can be overridden by a
cost-model file (global defaults and per-table overrides).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

from ..predicates import (
    And,
    Comparison,
    Contains,
    ContainsAny,
    Expr,
    KeywordQuery,
    Not,
    Or,
    PredicateBody,
    TruePredicate,
)
from .nodes import Relation


@dataclass
class CostModel:
    join_row_cost: float = 0.0005
    local_row_cost: float = 0.0005
    sel_equality: float = 0.1
    sel_inequality: float = 0.3
    sel_contains: float = 0.3
    sel_keyword_per_term: float = 0.05
    default_call_setup: float = 1.0
    default_per_row: float = 0.001
    table_overrides: Dict[str, dict] = field(default_factory=dict)

    # --- per-relation parameters ------------------------------------------------

    def _override(self, relation: Relation, key: str) -> Optional[float]:
        for name in (relation.name,):
            entry = self.table_overrides.get(name)
            if entry and key in entry:
                return float(entry[key])
        return None

    def call_setup(self, relation: Relation) -> float:
        if relation.kind == "workspace":
            return 0.0
        value = self._override(relation, "per_call_cost")
        if value is not None:
            return value
        if relation.table is not None:
            return relation.table.per_call_cost
        return self.default_call_setup

    def per_row(self, relation: Relation) -> float:
        if relation.kind == "workspace":
            return 0.0
        value = self._override(relation, "per_row_cost")
        if value is not None:
            return value
        if relation.table is not None:
            return relation.table.per_row_cost
        return self.default_per_row

    def row_estimate(self, relation: Relation) -> float:
        if relation.kind == "workspace":
            return float(relation.row_count or 0)
        value = self._override(relation, "row_estimate")
        if value is not None:
            return value
        if relation.table is not None:
            return float(relation.table.row_estimate)
        return 0.0

    # --- selectivity -------------------------------------------------------------

    def selectivity(self, body: Optional[PredicateBody]) -> float:
        if body is None:
            return 1.0
        if isinstance(body, KeywordQuery):
            total = 0.0
            for clause in body.clauses:
                total += min(1.0, self.sel_keyword_per_term * len(clause.terms))
            return min(1.0, total)
        return self._expr_selectivity(body)

    def _expr_selectivity(self, expr: Expr) -> float:
        if isinstance(expr, TruePredicate):
            return 1.0
        if isinstance(expr, Comparison):
            if expr.op == "eq":
                return self.sel_equality
            if expr.op == "ne":
                return min(1.0, max(0.0, 1.0 - self.sel_equality))
            return self.sel_inequality
        if isinstance(expr, (Contains, ContainsAny)):
            return self.sel_contains
        if isinstance(expr, And):
            sel = 1.0
            for child in expr.children:
                sel *= self._expr_selectivity(child)
            return sel
        if isinstance(expr, Or):
            return min(1.0, sum(self._expr_selectivity(c) for c in expr.children))
        if isinstance(expr, Not):
            return min(1.0, max(0.0, 1.0 - self._expr_selectivity(expr.child)))
        raise TypeError(f"not an expression: {expr!r}")

    # --- serialization -------------------------------------------------------------

    @classmethod
    def from_file(cls, path: str | Path) -> "CostModel":
        doc = json.loads(Path(path).read_text())
        defaults = doc.get("defaults", {})
        model = cls(
            join_row_cost=float(defaults.get("join_row_cost", 0.0005)),
            local_row_cost=float(defaults.get("local_row_cost", 0.0005)),
            sel_equality=float(defaults.get("equality", 0.1)),
            sel_inequality=float(defaults.get("inequality", 0.3)),
            sel_contains=float(defaults.get("contains", 0.3)),
            sel_keyword_per_term=float(defaults.get("keyword_per_term", 0.05)),
            default_call_setup=float(defaults.get("call_setup", 1.0)),
            default_per_row=float(defaults.get("per_row_cost", 0.001)),
            table_overrides={
                k: dict(v) for k, v in doc.get("tables", {}).items()
            },
        )
        return model
