"""Result tables: the first-class intermediate artifact of the engine.

A :class:`ResultTable` is a schema plus rows plus provenance.  Provenance is
a tuple of entries, one per request that produced the table: wrapper calls
record the source name, the native query text, and the exact number of
native invocations; local operations over workspace tables record the table
name with a call count of zero, so a table's lineage always reaches either
catalog sources or earlier workspace tables.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple

from . import values as V


@dataclass(frozen=True)
class Column:
    name: str
    type: str  # one of values.SEMANTIC_TYPES

    def as_json(self) -> dict:
        return {"name": self.name, "type": self.type}


@dataclass(frozen=True)
class ProvenanceEntry:
    """One request in a table's derivation."""

    source: str
    native_query: str
    call_count: int
    duration_seconds: float = 0.0
    timestamp: float = 0.0
    kind: str = "native"  # "native" for wrapper calls, "workspace" for local scans

    def as_json(self) -> dict:
        return {
            "source": self.source,
            "native_query": self.native_query,
            "call_count": self.call_count,
            "duration_seconds": self.duration_seconds,
            "timestamp": self.timestamp,
            "kind": self.kind,
        }


@dataclass
class ResultTable:
    schema: Tuple[Column, ...]
    rows: List[tuple]
    provenance: Tuple[ProvenanceEntry, ...] = ()

    def __post_init__(self):
        self.schema = tuple(self.schema)
        self.provenance = tuple(self.provenance)

    @property
    def column_names(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.schema)

    def column_index(self, name: str) -> int:
        for i, col in enumerate(self.schema):
            if col.name == name:
                return i
        raise KeyError(name)

    def native_call_count(self) -> int:
        return sum(p.call_count for p in self.provenance if p.kind == "native")

    def sources_consulted(self) -> dict:
        """Native call counts grouped by source name."""
        out: dict = {}
        for p in self.provenance:
            if p.kind == "native":
                out[p.source] = out.get(p.source, 0) + p.call_count
        return out

    def check_conformance(self) -> None:
        """Arity/type check for every row; raises ValueError on violation."""
        arity = len(self.schema)
        for n, row in enumerate(self.rows):
            if len(row) != arity:
                raise ValueError(f"row {n} arity {len(row)} != schema arity {arity}")
            for col, val in zip(self.schema, row):
                if not V.conforms(val, col.type):
                    raise ValueError(
                        f"row {n} column {col.name!r}: {val!r} is not {col.type}"
                    )

    def with_provenance(self, entries: Iterable[ProvenanceEntry]) -> "ResultTable":
        return replace(self, provenance=tuple(entries))

    def sorted_rows(self) -> List[tuple]:
        """Rows under the canonical all-columns lexicographic order."""
        types = [c.type for c in self.schema]

        def key(row: tuple):
            return tuple(V.sort_key(v, t) for v, t in zip(row, types))

        return sorted(self.rows, key=key)

    def multiset_equal(self, other: "ResultTable") -> bool:
        if self.column_names != other.column_names:
            return False
        return self.sorted_rows() == other.sorted_rows()

    # --- serialization -----------------------------------------------------

    def schema_json(self) -> str:
        return json.dumps(
            {"columns": [c.as_json() for c in self.schema]},
            sort_keys=True,
            separators=(",", ":"),
        )

    def rows_ndjson(self, sort: bool = False) -> str:
        rows = self.sorted_rows() if sort else self.rows
        buf = io.StringIO()
        names = self.column_names
        for row in rows:
            obj = {n: V.to_json_value(v) for n, v in zip(names, row)}
            buf.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
            buf.write("\n")
        return buf.getvalue()

    def serialize_output(self) -> str:
        """The OUTPUT format: one header line, then rows sorted by all columns."""
        return self.schema_json() + "\n" + self.rows_ndjson(sort=True)


def table_from_ndjson(schema: Sequence[Column], text: str) -> ResultTable:
    cols = tuple(schema)
    rows: List[tuple] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        rows.append(tuple(V.from_json_value(obj.get(c.name), c.type) for c in cols))
    return ResultTable(schema=cols, rows=rows)


def schema_from_json(text: str) -> Tuple[Column, ...]:
    obj = json.loads(text)
    return tuple(Column(c["name"], c["type"]) for c in obj["columns"])
