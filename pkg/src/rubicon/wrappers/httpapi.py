"""HTTP keyword-search wrapper and the fixture server it is tested against.

The wrapper speaks the REST contract:

* ``GET /search?q=<terms>&limit=<n>[&offset=<k>]`` -> JSON list of records;
* ``GET /page?title=<t>`` -> one record (404 when absent).

It pages through /search until a short page arrives, so one logical scan may
cost several native calls — that is what makes compiled-mode pushdown
observable in call counts.  A server that refuses to page past its result
window makes the wrapper raise a partial-result error; results are never
silently truncated.  Enumeration (full scan) is unsupported by design.
"""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.parse
import urllib.request
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import List, Optional, Tuple

from ..catalog import SourceDescriptor, TableSchema, load_source_dir
from ..errors import PartialResultError, WrapperError
from ..predicates import KeywordQuery, keyword_match, keyword_score, render_body
from ..values import to_json_value
from .access import AccessPolicy
from .base import FindRequest, Wrapper
from .store import FixtureStore


def _clause_to_q(clause) -> str:
    parts = []
    for term in clause.terms:
        if term.phrase:
            parts.append('"' + term.text + '"')
        else:
            parts.append(term.text)
    return " ".join(parts)


def _parse_q(q: str) -> List[Tuple[str, bool]]:
    """Server-side query parsing: words and double-quoted phrases."""
    terms: List[Tuple[str, bool]] = []
    i, n = 0, len(q)
    while i < n:
        ch = q[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            j = q.find('"', i + 1)
            if j < 0:
                j = n
            terms.append((q[i + 1 : j], True))
            i = j + 1
            continue
        j = i
        while j < n and not q[j].isspace():
            j += 1
        terms.append((q[i:j], False))
        i = j
    return terms


class HttpApiWrapper(Wrapper):
    kind = "http-api"
    dialect = "keyword-query"
    supports_enumeration = False
    supports_entity_probe = False

    def __init__(self, descriptor: SourceDescriptor, policy: Optional[AccessPolicy] = None):
        super().__init__(descriptor, policy)
        self.base_url = str(descriptor.connection.get("base_url", "")).rstrip("/")
        if not self.base_url:
            raise WrapperError(
                f"http-api source {descriptor.name!r} needs connection.base_url"
            )
        self.page_size = int(descriptor.connection.get("page_size", 100))
        self.timeout = float(descriptor.connection.get("timeout", 10.0))

    def _get(self, path: str, params: dict) -> object:
        url = f"{self.base_url}{path}?{urllib.parse.urlencode(params)}"
        try:
            with urllib.request.urlopen(url, timeout=self.timeout) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            if exc.code == 404:
                return None
            if exc.code == 422:
                raise PartialResultError(
                    f"source {self.descriptor.name!r} capped the result window "
                    f"for {url}"
                ) from exc
            raise WrapperError(
                f"source {self.descriptor.name!r} returned HTTP {exc.code} for {url}"
            ) from exc
        except urllib.error.URLError as exc:
            raise WrapperError(
                f"source {self.descriptor.name!r} unreachable: {exc.reason}"
            ) from exc
        return payload

    def _record_to_row(self, table: TableSchema, record: dict) -> tuple:
        from ..values import coerce

        return tuple(
            coerce(record.get(name), sem) if record.get(name) is not None else None
            for name, sem in table.columns
        )

    def _native_search(self, req: FindRequest) -> Tuple[List[tuple], str, int]:
        table = req.table
        calls = 0

        if req.bindings:
            binding = req.bindings[0]
            if binding.column != "title":
                raise WrapperError(
                    f"http-api source {self.descriptor.name!r} can only probe by title"
                )
            record = self._get("/page", {"title": str(binding.value)})
            calls += 1
            self._count_call(f"GET /page?title={binding.value!r}")
            rows = [] if record is None else [self._record_to_row(table, record)]
            if req.predicate is not None:
                query = req.predicate.body
                assert isinstance(query, KeywordQuery)
                text_idx = [i for i, (_, sem) in enumerate(table.columns) if sem == "text"]
                rows = [
                    r
                    for r in rows
                    if keyword_match(
                        query, "\n".join(str(r[i]) for i in text_idx if r[i] is not None)
                    )
                ]
            return rows, f"GET /page title={binding.value!r}", calls

        if req.predicate is None:
            raise WrapperError(
                f"http-api source {self.descriptor.name!r} does not support "
                f"enumeration; provide a keyword predicate"
            )
        query = req.predicate.body
        if not isinstance(query, KeywordQuery):
            raise WrapperError("http-api wrapper expects a keyword query")

        rows: List[tuple] = []
        seen = set()
        for clause in query.clauses:
            q = _clause_to_q(clause)
            offset = 0
            while True:
                payload = self._get(
                    "/search", {"q": q, "limit": self.page_size, "offset": offset}
                )
                calls += 1
                self._count_call(f"GET /search?q={q!r}&offset={offset}")
                page = payload or []
                for record in page:
                    row = self._record_to_row(table, record)
                    if row not in seen:
                        seen.add(row)
                        rows.append(row)
                if len(page) < self.page_size:
                    break
                offset += self.page_size
        query_text = f"GET /search q={render_body(query)}"
        return rows, query_text, calls


# --- fixture server -------------------------------------------------------------


class _FixtureHandler(BaseHTTPRequestHandler):
    table: TableSchema
    rows: List[tuple]
    texts: List[str]
    max_window: Optional[int]

    def log_message(self, fmt, *args):  # keep tests quiet
        pass

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _row_to_record(self, row: tuple) -> dict:
        return {
            name: to_json_value(v)
            for (name, _), v in zip(self.table.columns, row)
        }

    def do_GET(self):
        parsed = urllib.parse.urlparse(self.path)
        params = {k: v[0] for k, v in urllib.parse.parse_qs(parsed.query).items()}
        if parsed.path == "/search":
            q = params.get("q", "")
            limit = int(params.get("limit", "100"))
            offset = int(params.get("offset", "0"))
            terms = _parse_q(q)
            if not terms:
                self._send_json(400, {"error": "q is required"})
                return
            matched = []
            for i, text in enumerate(self.texts):
                folded = text.casefold()
                from ..predicates import tokenize_text

                tokens = set(tokenize_text(folded))
                ok = all(
                    (t.casefold() in folded) if phrase else (t.casefold() in tokens)
                    for t, phrase in terms
                )
                if ok:
                    matched.append(i)
            if self.max_window is not None and offset + limit > self.max_window:
                if len(matched) > self.max_window:
                    self._send_json(422, {"error": "result window exceeded"})
                    return
            window = matched[offset : offset + limit]
            self._send_json(200, [self._row_to_record(self.rows[i]) for i in window])
            return
        if parsed.path == "/page":
            title = params.get("title", "")
            title_idx = self.table.column_names.index("title")
            for row in self.rows:
                if row[title_idx] == title:
                    self._send_json(200, self._row_to_record(row))
                    return
            self._send_json(404, {"error": f"no page titled {title!r}"})
            return
        self._send_json(404, {"error": "unknown endpoint"})


class FixtureServer:
    """In-process HTTP server over one corpus-shaped fixture table."""

    def __init__(self, source_dir: str | Path, source_name: str = "HTTP_FIXTURE",
                 max_window: Optional[int] = None):
        descriptor = load_source_dir(source_name, "http-api", Path(source_dir),
                                     {"base_url": "pending"})
        if len(descriptor.tables) != 1:
            raise WrapperError("fixture server serves exactly one table")
        table = descriptor.tables[0]
        store = FixtureStore(descriptor)
        rows = store.rows(table)
        text_idx = [i for i, (_, sem) in enumerate(table.columns) if sem == "text"]
        texts = [
            "\n".join(str(r[i]) for i in text_idx if r[i] is not None) for r in rows
        ]

        handler = type(
            "BoundFixtureHandler",
            (_FixtureHandler,),
            {"table": table, "rows": rows, "texts": texts, "max_window": max_window},
        )
        self.httpd = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def base_url(self) -> str:
        host, port = self.httpd.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "FixtureServer":
        self.thread.start()
        return self

    def stop(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
