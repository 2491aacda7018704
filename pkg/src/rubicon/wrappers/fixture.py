"""Expression-dialect wrappers over fixture stores.

relational-fixture, mailbox and knowledge-stub differ only in the predicate
dialect they accept; all three evaluate expression trees row-at-a-time over
their stored rows, which keeps the pushdown oracle trivial.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from ..catalog import SourceDescriptor
from ..predicates import evaluate, render_body
from .access import AccessPolicy
from .base import FindRequest, Wrapper
from .store import FixtureStore


class ExpressionFixtureWrapper(Wrapper):
    def __init__(self, descriptor: SourceDescriptor, policy: Optional[AccessPolicy] = None):
        super().__init__(descriptor, policy)
        self.store = FixtureStore(descriptor)

    def _native_search(self, req: FindRequest) -> Tuple[List[tuple], str, int]:
        table = req.table
        rows = self.store.rows(table)
        columns = table.result_columns()
        out: List[tuple] = []
        for row in rows:
            if req.bindings:
                ok = True
                for binding in req.bindings:
                    idx = table.column_names.index(binding.column)
                    if not self._binding_match(binding, row[idx]):
                        ok = False
                        break
                if not ok:
                    continue
            if req.predicate is not None and not evaluate(
                req.predicate.body, row, columns
            ):
                continue
            out.append(row)
        parts = [f"scan {table.qualified_name}"]
        if req.bindings:
            parts.append(
                "bind " + ", ".join(f"{b.column}={b.value!r}" for b in req.bindings)
            )
        if req.predicate is not None:
            parts.append("where " + render_body(req.predicate.body))
        query_text = " | ".join(parts)
        self._count_call(query_text)
        return out, query_text, 1


class RelationalFixtureWrapper(ExpressionFixtureWrapper):
    kind = "relational-fixture"
    dialect = "boolean-expression"


class MailboxWrapper(ExpressionFixtureWrapper):
    kind = "mailbox"
    dialect = "mail-filter"


class KnowledgeStubWrapper(ExpressionFixtureWrapper):
    kind = "knowledge-stub"
    dialect = "fact-lookup"
