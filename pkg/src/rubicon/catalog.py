"""Catalog: sources, tables, schemas, statistics, and `?` introspection.

Table names are globally unique in both their bare and qualified forms, so a
FROM clause may reference `faculty` or `UNIVERSITY_DW.faculty`
interchangeably, and a bare source name resolves to the source's only table.
Statistics live here (not in the wrappers) so planning never needs a source
round-trip.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .aql.ast import SchemaQuery
from .errors import CatalogError, NotFoundError
from .table import Column, ResultTable
from .values import SEMANTIC_TYPES

WRAPPER_KINDS = (
    "relational-fixture",
    "document-corpus",
    "mailbox",
    "knowledge-stub",
    "http-api",
)


@dataclass(frozen=True)
class TableSchema:
    qualified_name: str  # globally unique, e.g. "UNIVERSITY_DW.faculty"
    source: str
    name: str  # bare name, also globally unique
    columns: Tuple[Tuple[str, str], ...]  # (column name, semantic type)
    row_estimate: int = 0
    per_call_cost: float = 1.0
    per_row_cost: float = 0.001

    def __post_init__(self):
        seen = set()
        for col, sem in self.columns:
            if col in seen:
                raise CatalogError(
                    f"duplicate column {col!r} in table {self.qualified_name!r}"
                )
            seen.add(col)
            if sem not in SEMANTIC_TYPES:
                raise CatalogError(
                    f"unknown semantic type {sem!r} for column "
                    f"{self.qualified_name}.{col}"
                )
        if self.row_estimate < 0 or self.per_call_cost < 0 or self.per_row_cost < 0:
            raise CatalogError(
                f"negative statistics for table {self.qualified_name!r}"
            )

    @property
    def column_names(self) -> Tuple[str, ...]:
        return tuple(c for c, _ in self.columns)

    def column_type(self, name: str) -> str:
        for col, sem in self.columns:
            if col == name:
                return sem
        raise NotFoundError(
            f"table {self.qualified_name!r} has no column {name!r}"
        )

    def has_column(self, name: str) -> bool:
        return any(c == name for c, _ in self.columns)

    def text_columns(self) -> Tuple[str, ...]:
        return tuple(c for c, sem in self.columns if sem == "text")

    def result_columns(self) -> Tuple[Column, ...]:
        return tuple(Column(c, sem) for c, sem in self.columns)


@dataclass(frozen=True)
class SourceDescriptor:
    name: str
    wrapper_kind: str
    connection: Dict[str, object] = field(default_factory=dict)
    tables: Tuple[TableSchema, ...] = ()

    def __post_init__(self):
        if self.wrapper_kind not in WRAPPER_KINDS:
            raise CatalogError(f"unknown wrapper kind {self.wrapper_kind!r}")
        if not self.tables:
            raise CatalogError(f"source {self.name!r} declares no tables")


class Catalog:
    """Registry of sources and tables; writer operations are serialized."""

    def __init__(self):
        self._lock = threading.RLock()
        self._sources: Dict[str, SourceDescriptor] = {}
        self._order: List[str] = []
        self._tables: Dict[str, TableSchema] = {}  # keyed by qualified AND bare name

    def register_source(self, desc: SourceDescriptor) -> SourceDescriptor:
        with self._lock:
            if desc.name in self._sources:
                raise CatalogError(f"duplicate source name {desc.name!r}")
            fresh: Dict[str, TableSchema] = {}
            for table in desc.tables:
                for key in (table.qualified_name, table.name):
                    if key in self._tables or key in fresh:
                        raise CatalogError(
                            f"table name collision: {key!r} already registered"
                        )
                    fresh[key] = table
                if table.source != desc.name:
                    raise CatalogError(
                        f"table {table.qualified_name!r} does not belong to "
                        f"source {desc.name!r}"
                    )
            self._sources[desc.name] = desc
            self._order.append(desc.name)
            self._tables.update(fresh)
            return desc

    def sources(self) -> List[SourceDescriptor]:
        with self._lock:
            return [self._sources[n] for n in self._order]

    def source(self, name: str) -> SourceDescriptor:
        with self._lock:
            if name not in self._sources:
                raise NotFoundError(f"unknown source {name!r}")
            return self._sources[name]

    def has_source(self, name: str) -> bool:
        with self._lock:
            return name in self._sources

    def tables(self) -> List[TableSchema]:
        with self._lock:
            out = []
            for name in self._order:
                out.extend(self._sources[name].tables)
            return out

    def resolve_table(self, ref: str) -> TableSchema:
        """Resolve a FROM reference: qualified name, bare name, or sole-table source."""
        with self._lock:
            if ref in self._tables:
                return self._tables[ref]
            if ref in self._sources:
                tables = self._sources[ref].tables
                if len(tables) == 1:
                    return tables[0]
                raise CatalogError(
                    f"{ref!r} names a source with {len(tables)} tables; "
                    f"qualify the table name"
                )
            raise NotFoundError(f"unknown table {ref!r}")

    def has_table(self, ref: str) -> bool:
        with self._lock:
            return ref in self._tables

    def set_statistics(
        self,
        table: str,
        row_estimate: Optional[int] = None,
        per_call_cost: Optional[float] = None,
        per_row_cost: Optional[float] = None,
    ) -> TableSchema:
        with self._lock:
            schema = self.resolve_table(table)
            for value, label in (
                (row_estimate, "row_estimate"),
                (per_call_cost, "per_call_cost"),
                (per_row_cost, "per_row_cost"),
            ):
                if value is not None and value < 0:
                    raise CatalogError(f"negative {label} for table {table!r}")
            updated = replace(
                schema,
                row_estimate=schema.row_estimate if row_estimate is None else row_estimate,
                per_call_cost=schema.per_call_cost if per_call_cost is None else per_call_cost,
                per_row_cost=schema.per_row_cost if per_row_cost is None else per_row_cost,
            )
            desc = self._sources[schema.source]
            new_tables = tuple(
                updated if t.qualified_name == schema.qualified_name else t
                for t in desc.tables
            )
            self._sources[schema.source] = replace(desc, tables=new_tables)
            self._tables[updated.qualified_name] = updated
            self._tables[updated.name] = updated
            return updated

    # --- `?` introspection ---------------------------------------------------

    def introspect(self, query: SchemaQuery) -> ResultTable:
        if query.target is None:
            rows = [(d.name, d.wrapper_kind) for d in self.sources()]
            return ResultTable(
                schema=(Column("source", "text"), Column("wrapper_kind", "text")),
                rows=rows,
            )
        target = query.target
        with self._lock:
            if target in self._sources:
                rows = [(t.qualified_name,) for t in self._sources[target].tables]
                return ResultTable(schema=(Column("table", "text"),), rows=rows)
        if self.has_table(target):
            schema = self.resolve_table(target)
            rows = [(c, sem) for c, sem in schema.columns]
            return ResultTable(
                schema=(Column("column", "text"), Column("type", "text")), rows=rows
            )
        raise NotFoundError(f"unknown source or table {target!r}")


# --- catalog / fixture files --------------------------------------------------


def _table_from_json(source: str, obj: dict) -> TableSchema:
    return TableSchema(
        qualified_name=f"{source}.{obj['name']}",
        source=source,
        name=obj["name"],
        columns=tuple((c[0], c[1]) for c in obj["columns"]),
        row_estimate=int(obj.get("row_estimate", 0)),
        per_call_cost=float(obj.get("per_call_cost", 1.0)),
        per_row_cost=float(obj.get("per_row_cost", 0.001)),
    )


def load_source_dir(name: str, wrapper_kind: str, path: Path, connection: Optional[dict] = None) -> SourceDescriptor:
    """Build a descriptor from a fixture directory (schema.json + *.ndjson)."""
    schema_file = Path(path) / "schema.json"
    if not schema_file.exists():
        raise CatalogError(f"source {name!r}: missing {schema_file}")
    doc = json.loads(schema_file.read_text())
    tables = tuple(_table_from_json(name, t) for t in doc["tables"])
    conn = dict(connection or {})
    conn["path"] = str(path)
    return SourceDescriptor(name=name, wrapper_kind=wrapper_kind, connection=conn, tables=tables)


def load_catalog_file(path: str | Path) -> Catalog:
    """Load a catalog document; fixture paths are relative to the file."""
    path = Path(path)
    doc = json.loads(path.read_text())
    catalog = Catalog()
    for src in doc["sources"]:
        connection = dict(src.get("connection", {}))
        kind = src["wrapper_kind"]
        if "path" in connection:
            fixture_dir = (path.parent / str(connection["path"])).resolve()
            desc = load_source_dir(src["name"], kind, fixture_dir, connection)
        else:
            tables = tuple(_table_from_json(src["name"], t) for t in src.get("tables", []))
            desc = SourceDescriptor(
                name=src["name"], wrapper_kind=kind, connection=connection, tables=tables
            )
        catalog.register_source(desc)
    return catalog
