"""AQL abstract syntax.

All nodes are frozen dataclasses; structural equality is dataclass equality,
which is what the render/parse round-trip tests compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

AGGREGATE_FUNCTIONS = ("COUNT", "SUM", "AVG", "MIN", "MAX")


@dataclass(frozen=True)
class ColumnProj:
    name: str


@dataclass(frozen=True)
class StarProj:
    pass


@dataclass(frozen=True)
class AggregateProj:
    function: str  # one of AGGREGATE_FUNCTIONS
    column: Optional[str]  # None means COUNT(*)


Projection = Union[ColumnProj, StarProj, AggregateProj]


@dataclass(frozen=True)
class NaturalByName:
    """Equality on all identically named columns (the default)."""


@dataclass(frozen=True)
class ExplicitPairs:
    pairs: Tuple[Tuple[str, str], ...]  # (left column, right column)


@dataclass(frozen=True)
class EntityMatch:
    """Normalized-string equality for joining entity names across sources."""

    left: str
    right: str


JoinCondition = Union[NaturalByName, ExplicitPairs, EntityMatch]


@dataclass(frozen=True)
class JoinLink:
    right: "FindQuery"
    condition: JoinCondition


@dataclass(frozen=True)
class FindQuery:
    projections: Tuple[Projection, ...]
    source: str  # table reference; resolved against the catalog later
    predicate: Optional[str] = None  # the WHERE utterance, verbatim
    join: Optional[JoinLink] = None

    def chain(self) -> Tuple[List["FindQuery"], List[JoinCondition]]:
        """Flatten the join chain into blocks + conditions (left-fold order)."""
        blocks: List[FindQuery] = []
        conds: List[JoinCondition] = []
        node: Optional[FindQuery] = self
        while node is not None:
            blocks.append(node)
            if node.join is not None:
                conds.append(node.join.condition)
                node = node.join.right
            else:
                node = None
        return blocks, conds

    def from_tables(self) -> List[str]:
        return [b.source for b in self.chain()[0]]


@dataclass(frozen=True)
class SchemaQuery:
    """The `?` forms: no argument, a source name, or a table name."""

    target: Optional[str] = None


@dataclass(frozen=True)
class SaveStatement:
    query: FindQuery
    new_table: str


@dataclass(frozen=True)
class OutputStatement:
    table: str
    destination: Optional[str] = None  # None means standard output


@dataclass(frozen=True)
class DeleteStatement:
    table: str


Statement = Union[FindQuery, SchemaQuery, SaveStatement, OutputStatement, DeleteStatement]
