"""Native predicate bodies and their reference evaluation.

Two body families exist:

* expression trees (:class:`Expr`) for the boolean-expression, mail-filter
  and fact-lookup dialects — comparisons, substring containment, and/or/not;
* :class:`KeywordQuery` for the keyword-query dialect — a disjunction of
  conjunctive term lists, where a term is a word or a quoted phrase.

`evaluate` is deliberately simple row-at-a-time logic: it doubles as the
independent oracle for wrapper pushdown tests.  Predicates evaluate to false
on null operands.
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .table import Column

COMPARE_OPS = ("eq", "ne", "lt", "le", "gt", "ge")


@dataclass(frozen=True)
class Comparison:
    column: str
    op: str  # one of COMPARE_OPS
    value: object


@dataclass(frozen=True)
class Contains:
    """Case-insensitive substring match on one text column."""

    column: str
    needle: str


@dataclass(frozen=True)
class ContainsAny:
    """Case-insensitive substring match over several text columns."""

    columns: Tuple[str, ...]
    needle: str


@dataclass(frozen=True)
class And:
    children: Tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    children: Tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    child: "Expr"


@dataclass(frozen=True)
class TruePredicate:
    pass


Expr = Union[Comparison, Contains, ContainsAny, And, Or, Not, TruePredicate]


@dataclass(frozen=True)
class KeywordQuery:
    """OR of clauses; a clause matches when all its terms occur in the text."""

    clauses: Tuple["KeywordClause", ...]

    def all_terms(self) -> List["KeywordTerm"]:
        return [t for c in self.clauses for t in c.terms]


@dataclass(frozen=True)
class KeywordClause:
    terms: Tuple["KeywordTerm", ...]


@dataclass(frozen=True)
class KeywordTerm:
    text: str
    phrase: bool = False  # phrases match as substrings, words as whole tokens


PredicateBody = Union[Expr, KeywordQuery]

_WORD_RE = re.compile(r"[a-z0-9@.']+")


def tokenize_text(text: str) -> List[str]:
    return _WORD_RE.findall(text.lower())


def _cmp_values(left, right) -> Optional[int]:
    """Three-way compare, or None when the operands are incomparable/null."""
    if left is None or right is None:
        return None
    if isinstance(left, str) and isinstance(right, str):
        l, r = left.casefold(), right.casefold()
    elif isinstance(left, bool) or isinstance(right, bool):
        if not (isinstance(left, bool) and isinstance(right, bool)):
            return None
        l, r = left, right
    elif isinstance(left, (int, float)) and isinstance(right, (int, float)):
        l, r = left, right
    elif isinstance(left, _dt.date) and isinstance(right, _dt.date):
        l, r = left, right
    else:
        return None
    return (l > r) - (l < r)


def evaluate(expr: Expr, row: tuple, columns: Sequence[Column]) -> bool:
    index = {c.name: i for i, c in enumerate(columns)}

    def contains(col: str, needle: str) -> bool:
        i = index.get(col)
        if i is None:
            return False
        val = row[i]
        if val is None:
            return False
        return needle.casefold() in str(val).casefold()

    def walk(node: Expr) -> bool:
        if isinstance(node, TruePredicate):
            return True
        if isinstance(node, Comparison):
            i = index.get(node.column)
            if i is None:
                return False
            c = _cmp_values(row[i], node.value)
            if c is None:
                return False
            return {
                "eq": c == 0,
                "ne": c != 0,
                "lt": c < 0,
                "le": c <= 0,
                "gt": c > 0,
                "ge": c >= 0,
            }[node.op]
        if isinstance(node, Contains):
            return contains(node.column, node.needle)
        if isinstance(node, ContainsAny):
            return any(contains(c, node.needle) for c in node.columns)
        if isinstance(node, And):
            return all(walk(c) for c in node.children)
        if isinstance(node, Or):
            return any(walk(c) for c in node.children)
        if isinstance(node, Not):
            return not walk(node.child)
        raise TypeError(f"not an expression: {node!r}")

    return walk(expr)


def keyword_match(query: KeywordQuery, text: str) -> bool:
    folded = text.casefold()
    tokens = set(tokenize_text(folded))

    def term_ok(term: KeywordTerm) -> bool:
        if term.phrase:
            return term.text.casefold() in folded
        return term.text.casefold() in tokens

    return any(all(term_ok(t) for t in clause.terms) for clause in query.clauses)


def keyword_score(query: KeywordQuery, text: str) -> int:
    """Plain term-frequency score: total occurrences of matched terms."""
    folded = text.casefold()
    tokens = tokenize_text(folded)
    score = 0
    for clause in query.clauses:
        if not all(
            (t.text.casefold() in folded) if t.phrase else (t.text.casefold() in tokens)
            for t in clause.terms
        ):
            continue
        for term in clause.terms:
            if term.phrase:
                score += folded.count(term.text.casefold())
            else:
                needle = term.text.casefold()
                score += sum(1 for tok in tokens if tok == needle)
    return score


def expr_columns(expr: Expr) -> set:
    """Column names an expression reads (for scan fetch planning)."""
    if isinstance(expr, Comparison):
        return {expr.column}
    if isinstance(expr, Contains):
        return {expr.column}
    if isinstance(expr, ContainsAny):
        return set(expr.columns)
    if isinstance(expr, (And, Or)):
        out: set = set()
        for child in expr.children:
            out |= expr_columns(child)
        return out
    if isinstance(expr, Not):
        return expr_columns(expr.child)
    if isinstance(expr, TruePredicate):
        return set()
    raise TypeError(f"not an expression: {expr!r}")


def keyword_and(left: KeywordQuery, right: KeywordQuery) -> KeywordQuery:
    """Conjunction of two keyword queries by clause distribution."""
    clauses = []
    for a in left.clauses:
        for b in right.clauses:
            clauses.append(KeywordClause(terms=a.terms + b.terms))
    return KeywordQuery(clauses=tuple(clauses))


# --- rendering & JSON --------------------------------------------------------


def render_body(body: PredicateBody) -> str:
    """Stable single-line rendering, used in provenance and plan explain."""
    if isinstance(body, KeywordQuery):
        parts = []
        for clause in body.clauses:
            terms = " AND ".join(
                f'"{t.text}"' if t.phrase else t.text for t in clause.terms
            )
            parts.append(f"({terms})")
        return " OR ".join(parts)
    return _render_expr(body)


_OP_TEXT = {"eq": "=", "ne": "!=", "lt": "<", "le": "<=", "gt": ">", "ge": ">="}


def _render_expr(node: Expr) -> str:
    if isinstance(node, TruePredicate):
        return "true"
    if isinstance(node, Comparison):
        val = node.value.isoformat() if isinstance(node.value, _dt.date) else node.value
        return f"{node.column} {_OP_TEXT[node.op]} {val!r}"
    if isinstance(node, Contains):
        return f"{node.column} contains {node.needle!r}"
    if isinstance(node, ContainsAny):
        return f"any({', '.join(node.columns)}) contains {node.needle!r}"
    if isinstance(node, And):
        return "(" + " AND ".join(_render_expr(c) for c in node.children) + ")"
    if isinstance(node, Or):
        return "(" + " OR ".join(_render_expr(c) for c in node.children) + ")"
    if isinstance(node, Not):
        return f"NOT {_render_expr(node.child)}"
    raise TypeError(f"not an expression: {node!r}")


def body_to_json(body: PredicateBody):
    if isinstance(body, KeywordQuery):
        return {
            "kind": "keyword",
            "clauses": [
                [{"text": t.text, "phrase": t.phrase} for t in c.terms]
                for c in body.clauses
            ],
        }
    return {"kind": "expr", "expr": _expr_to_json(body)}


def _expr_to_json(node: Expr):
    if isinstance(node, TruePredicate):
        return {"op": "true"}
    if isinstance(node, Comparison):
        value = node.value
        if isinstance(value, _dt.date):
            value = {"date": value.isoformat()}
        return {"op": node.op, "column": node.column, "value": value}
    if isinstance(node, Contains):
        return {"op": "contains", "column": node.column, "needle": node.needle}
    if isinstance(node, ContainsAny):
        return {"op": "contains_any", "columns": list(node.columns), "needle": node.needle}
    if isinstance(node, And):
        return {"op": "and", "children": [_expr_to_json(c) for c in node.children]}
    if isinstance(node, Or):
        return {"op": "or", "children": [_expr_to_json(c) for c in node.children]}
    if isinstance(node, Not):
        return {"op": "not", "child": _expr_to_json(node.child)}
    raise TypeError(f"not an expression: {node!r}")


def body_from_json(obj) -> PredicateBody:
    if obj["kind"] == "keyword":
        return KeywordQuery(
            clauses=tuple(
                KeywordClause(
                    terms=tuple(KeywordTerm(t["text"], t["phrase"]) for t in clause)
                )
                for clause in obj["clauses"]
            )
        )
    return _expr_from_json(obj["expr"])


def _expr_from_json(obj) -> Expr:
    op = obj["op"]
    if op == "true":
        return TruePredicate()
    if op in COMPARE_OPS:
        value = obj["value"]
        if isinstance(value, dict) and "date" in value:
            value = _dt.date.fromisoformat(value["date"])
        return Comparison(column=obj["column"], op=op, value=value)
    if op == "contains":
        return Contains(column=obj["column"], needle=obj["needle"])
    if op == "contains_any":
        return ContainsAny(columns=tuple(obj["columns"]), needle=obj["needle"])
    if op == "and":
        return And(children=tuple(_expr_from_json(c) for c in obj["children"]))
    if op == "or":
        return Or(children=tuple(_expr_from_json(c) for c in obj["children"]))
    if op == "not":
        return Not(child=_expr_from_json(obj["child"]))
    raise ValueError(f"unknown expression op {op!r}")
