"""Document-corpus wrapper: inverted index + conjunctive keyword matching.

Word terms are resolved through a per-table inverted index (postings of
token -> row ids); quoted phrases are verified by substring containment on
the row's concatenated text columns.  Matches are ranked by plain term
frequency (no document-length normalization, so the score is trivially
recomputable by tests) with the original row order breaking ties.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Set, Tuple

from ..catalog import SourceDescriptor, TableSchema
from ..errors import WrapperError
from ..predicates import (
    KeywordQuery,
    keyword_match,
    keyword_score,
    render_body,
    tokenize_text,
)
from .access import AccessPolicy
from .base import FindRequest, Wrapper
from .store import FixtureStore


class CorpusWrapper(Wrapper):
    kind = "document-corpus"
    dialect = "keyword-query"

    def __init__(self, descriptor: SourceDescriptor, policy: Optional[AccessPolicy] = None):
        super().__init__(descriptor, policy)
        self.store = FixtureStore(descriptor)
        self._index: Dict[str, Dict[str, Set[int]]] = {}
        self._doc_text: Dict[str, List[str]] = {}

    def _ensure_index(self, table: TableSchema) -> None:
        key = table.qualified_name
        if key in self._index:
            return
        postings: Dict[str, Set[int]] = defaultdict(set)
        texts: List[str] = []
        text_idx = [
            i for i, (_, sem) in enumerate(table.columns) if sem == "text"
        ]
        for doc_id, row in enumerate(self.store.rows(table)):
            text = "\n".join(str(row[i]) for i in text_idx if row[i] is not None)
            texts.append(text)
            for token in set(tokenize_text(text)):
                postings[token].add(doc_id)
        self._index[key] = dict(postings)
        self._doc_text[key] = texts

    def _candidates(self, table: TableSchema, query: KeywordQuery) -> List[int]:
        index = self._index[table.qualified_name]
        texts = self._doc_text[table.qualified_name]
        all_ids = range(len(texts))
        hit: Set[int] = set()
        for clause in query.clauses:
            word_sets = [
                index.get(t.text.casefold(), set()) for t in clause.terms if not t.phrase
            ]
            if word_sets:
                ids: Set[int] = set.intersection(*word_sets) if word_sets else set()
            else:
                ids = set(all_ids)
            phrases = [t for t in clause.terms if t.phrase]
            for doc_id in ids:
                if all(p.text.casefold() in texts[doc_id].casefold() for p in phrases):
                    hit.add(doc_id)
        return sorted(hit)

    def _native_search(self, req: FindRequest) -> Tuple[List[tuple], str, int]:
        table = req.table
        self._ensure_index(table)
        rows = self.store.rows(table)
        texts = self._doc_text[table.qualified_name]

        if req.predicate is not None:
            query = req.predicate.body
            if not isinstance(query, KeywordQuery):
                raise WrapperError(
                    f"corpus wrapper expects a keyword query, got "
                    f"{type(query).__name__}"
                )
            ids = self._candidates(table, query)
        else:
            query = None
            ids = list(range(len(rows)))

        if req.bindings:
            def bound(doc_id: int) -> bool:
                for binding in req.bindings:
                    idx = table.column_names.index(binding.column)
                    if not self._binding_match(binding, rows[doc_id][idx]):
                        return False
                return True

            ids = [i for i in ids if bound(i)]

        if query is not None:
            ids.sort(key=lambda i: (-keyword_score(query, texts[i]), i))

        parts = [f"search {table.qualified_name}"]
        if req.bindings:
            parts.append(
                "bind " + ", ".join(f"{b.column}={b.value!r}" for b in req.bindings)
            )
        if query is not None:
            parts.append("q=" + render_body(query))
        query_text = " | ".join(parts)
        self._count_call(query_text)
        return [rows[i] for i in ids], query_text, 1
