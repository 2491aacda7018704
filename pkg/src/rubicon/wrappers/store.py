"""Fixture-backed row store shared by the local wrapper kinds.

A source directory holds `schema.json` plus one `<table>.ndjson` per table
(one flat JSON object per row, keys = column names).  Values are coerced
into the semantic types at load; missing fields become null.  Tables may
also be injected directly (descriptor connection key "data"), which the
tests use to build ad-hoc sources without touching disk.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Dict, List, Optional

from ..catalog import SourceDescriptor, TableSchema
from ..errors import WrapperError
from ..values import coerce


class FixtureStore:
    def __init__(self, descriptor: SourceDescriptor):
        self.descriptor = descriptor
        self._rows: Dict[str, List[tuple]] = {}
        self._lock = threading.Lock()
        inline = descriptor.connection.get("data")
        if inline is not None:
            for table in descriptor.tables:
                records = inline.get(table.name, [])
                self._rows[table.qualified_name] = [
                    self._coerce_record(table, rec) for rec in records
                ]

    def rows(self, table: TableSchema) -> List[tuple]:
        with self._lock:
            if table.qualified_name in self._rows:
                return self._rows[table.qualified_name]
            path = self.descriptor.connection.get("path")
            if path is None:
                self._rows[table.qualified_name] = []
                return []
            data_file = Path(str(path)) / f"{table.name}.ndjson"
            if not data_file.exists():
                self._rows[table.qualified_name] = []
                return []
            loaded: List[tuple] = []
            for line in data_file.read_text().splitlines():
                line = line.strip()
                if not line:
                    continue
                loaded.append(self._coerce_record(table, json.loads(line)))
            self._rows[table.qualified_name] = loaded
            return loaded

    def _coerce_record(self, table: TableSchema, record: dict) -> tuple:
        out = []
        for name, sem in table.columns:
            raw = record.get(name)
            try:
                out.append(coerce(raw, sem) if raw is not None else None)
            except ValueError as exc:
                raise WrapperError(
                    f"source {self.descriptor.name!r}, table {table.name!r}: {exc}"
                ) from exc
        return tuple(out)
