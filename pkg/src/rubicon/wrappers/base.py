"""The uniform wrapper contract.

A wrapper converts one Find request into native access against its source
and returns rows conforming to the declared relational view.  Every native
invocation is counted: the provenance `call_count` of a returned table is
exact, and instrumentation (`native_calls`, `call_log`) lets tests assert
that equality independently.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..catalog import SourceDescriptor, TableSchema
from ..entity import normalize_entity
from ..errors import AccessDenied, ExecutionError, NotFoundError, WrapperError
from ..table import Column, ProvenanceEntry, ResultTable
from ..translator import NativePredicate
from .access import ALLOW, AccessPolicy


@dataclass(frozen=True)
class Binding:
    """A probe-style equality on one column; `entity` mode compares
    normalized entity names instead of raw values."""

    column: str
    value: object = None
    mode: str = "exact"  # "exact" | "entity"


@dataclass(frozen=True)
class FindRequest:
    table: TableSchema
    projections: Optional[Tuple[str, ...]] = None  # None means '*'
    predicate: Optional[NativePredicate] = None
    bindings: Tuple[Binding, ...] = ()
    limit: Optional[int] = None
    principal: str = "anonymous"


class Wrapper:
    kind = "abstract"
    dialect = "boolean-expression"
    supports_enumeration = True
    supports_probe = True
    supports_entity_probe = True

    def __init__(self, descriptor: SourceDescriptor, policy: Optional[AccessPolicy] = None):
        self.descriptor = descriptor
        self.policy = policy or AccessPolicy(None)
        self._tables = {t.name: t for t in descriptor.tables}
        self._tables.update({t.qualified_name: t for t in descriptor.tables})
        self._lock = threading.Lock()
        self.native_calls = 0
        self.call_log: List[str] = []

    # --- contract -------------------------------------------------------------

    def authorize(self, principal: str, table: TableSchema) -> str:
        return self.policy.authorize(principal, table.qualified_name, table.name)

    def execute_find(self, req: FindRequest) -> ResultTable:
        self._check_access(req)
        self._validate(req)
        started = time.perf_counter()
        stamp = time.time()
        rows, query_text, calls = self._native_search(req)
        if req.limit is not None:
            rows = rows[: req.limit]
        table = self._project(req, rows)
        entry = ProvenanceEntry(
            source=self.descriptor.name,
            native_query=query_text,
            call_count=calls,
            duration_seconds=time.perf_counter() - started,
            timestamp=stamp,
        )
        return table.with_provenance((entry,))

    def execute_probe_batch(self, req: FindRequest, values: Sequence[object]) -> ResultTable:
        if not values:
            raise ExecutionError("probe batch requires a non-empty value list")
        if len(req.bindings) != 1:
            raise ExecutionError("probe batch requires exactly one binding column")
        if not self.supports_probe:
            raise WrapperError(f"source {self.descriptor.name!r} does not support probes")
        binding = req.bindings[0]
        if binding.mode == "entity" and not self.supports_entity_probe:
            raise WrapperError(
                f"source {self.descriptor.name!r} does not support entity probes"
            )
        self._check_access(req)
        self._validate(req)
        started = time.perf_counter()
        stamp = time.time()
        all_rows: List[tuple] = []
        total_calls = 0
        queries: List[str] = []
        for value in values:
            bound = FindRequest(
                table=req.table,
                projections=req.projections,
                predicate=req.predicate,
                bindings=(Binding(binding.column, value, binding.mode),),
                limit=None,
                principal=req.principal,
            )
            try:
                rows, query_text, calls = self._native_search(bound)
            except ExecutionError as exc:
                raise WrapperError(
                    f"probe for value {value!r} failed on source "
                    f"{self.descriptor.name!r}: {exc.message}"
                ) from exc
            all_rows.extend(rows)
            total_calls += calls
            queries.append(query_text)
        table = self._project(req, all_rows)
        entry = ProvenanceEntry(
            source=self.descriptor.name,
            native_query=f"probe[{len(values)}] " + (queries[0] if queries else ""),
            call_count=total_calls,
            duration_seconds=time.perf_counter() - started,
            timestamp=stamp,
        )
        return table.with_provenance((entry,))

    def full_scan(self, table_ref: str) -> ResultTable:
        if not self.supports_enumeration:
            raise WrapperError(
                f"source {self.descriptor.name!r} does not support enumeration"
            )
        table = self.table(table_ref)
        req = FindRequest(table=table, projections=None, principal="system")
        rows, query_text, calls = self._native_search(req)
        entry = ProvenanceEntry(
            source=self.descriptor.name,
            native_query=f"full scan: {query_text}",
            call_count=calls,
        )
        return self._project(req, rows).with_provenance((entry,))

    # --- helpers ---------------------------------------------------------------

    def table(self, ref: str) -> TableSchema:
        if ref not in self._tables:
            raise NotFoundError(
                f"source {self.descriptor.name!r} has no table {ref!r}"
            )
        return self._tables[ref]

    def _check_access(self, req: FindRequest) -> None:
        if self.authorize(req.principal, req.table) != ALLOW:
            raise AccessDenied(
                f"principal {req.principal!r} is denied access to "
                f"table {req.table.qualified_name!r}"
            )

    def _validate(self, req: FindRequest) -> None:
        if req.table.qualified_name not in self._tables:
            raise NotFoundError(
                f"source {self.descriptor.name!r} has no table "
                f"{req.table.qualified_name!r}"
            )
        cols = set(req.table.column_names)
        for proj in req.projections or ():
            if proj not in cols:
                raise NotFoundError(
                    f"table {req.table.qualified_name!r} has no column {proj!r}"
                )
        for binding in req.bindings:
            if binding.column not in cols:
                raise NotFoundError(
                    f"binding column {binding.column!r} not in table "
                    f"{req.table.qualified_name!r}"
                )
        if req.limit is not None and req.limit <= 0:
            raise ExecutionError("limit must be positive")
        if req.predicate is not None and req.predicate.dialect != self.dialect:
            raise WrapperError(
                f"dialect mismatch: wrapper {self.kind!r} speaks "
                f"{self.dialect!r}, predicate is {req.predicate.dialect!r}"
            )

    def _project(self, req: FindRequest, rows: List[tuple]) -> ResultTable:
        table = req.table
        if req.projections is None:
            schema = table.result_columns()
            return ResultTable(schema=schema, rows=rows)
        indices = [table.column_names.index(p) for p in req.projections]
        schema = tuple(Column(p, table.column_type(p)) for p in req.projections)
        projected = [tuple(row[i] for i in indices) for row in rows]
        return ResultTable(schema=schema, rows=projected)

    def _count_call(self, description: str) -> None:
        with self._lock:
            self.native_calls += 1
            self.call_log.append(description)

    @staticmethod
    def _binding_match(binding: Binding, value: object) -> bool:
        if value is None:
            return False
        if binding.mode == "entity":
            return normalize_entity(str(value)) == normalize_entity(str(binding.value))
        if isinstance(value, str) and isinstance(binding.value, str):
            return value.casefold() == binding.value.casefold()
        return value == binding.value

    # Subclasses implement the native layer: full-width rows + query text + call count.
    def _native_search(self, req: FindRequest) -> Tuple[List[tuple], str, int]:
        raise NotImplementedError
