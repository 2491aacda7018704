import json
from pathlib import Path

import pytest

from rubicon.catalog import SourceDescriptor, TableSchema
from rubicon.errors import PartialResultError, WrapperError
from rubicon.translator import DeterministicTranslator
from rubicon.wrappers import Binding, FindRequest, FixtureServer, build_wrapper

T = DeterministicTranslator()


def corpus_dir(tmp_path: Path, docs) -> Path:
    d = tmp_path / "webcorpus"
    d.mkdir()
    (d / "schema.json").write_text(json.dumps({
        "tables": [{
            "name": "pages",
            "columns": [["title", "text"], ["text", "text"]],
            "row_estimate": len(docs),
        }]
    }))
    (d / "pages.ndjson").write_text(
        "".join(json.dumps(doc) + "\n" for doc in docs)
    )
    return d


def docs_common_rare():
    docs = []
    for i in range(250):
        text = "common filler words"
        if i < 40:
            text = "common and rare words"
        docs.append({"title": f"doc {i}", "text": text})
    return docs


@pytest.fixture()
def served(tmp_path):
    server = FixtureServer(corpus_dir(tmp_path, docs_common_rare()), "WEB").start()
    yield server
    server.stop()


def http_wrapper(server, page_size=100):
    table = TableSchema(
        qualified_name="WEB.pages", source="WEB", name="pages",
        columns=(("title", "text"), ("text", "text")), row_estimate=250,
    )
    desc = SourceDescriptor(
        name="WEB", wrapper_kind="http-api",
        connection={"base_url": server.base_url, "page_size": page_size},
        tables=(table,),
    )
    return build_wrapper(desc), table


class TestSearch:
    def test_paginated_search_counts_pages_as_calls(self, served):
        w, table = http_wrapper(served)
        pred = T.translate("common", table, "keyword-query")
        result = w.execute_find(FindRequest(table=table, predicate=pred))
        assert len(result.rows) == 250
        assert result.provenance[0].call_count == 3  # 100 + 100 + 50

    def test_selective_search_uses_one_call(self, served):
        w, table = http_wrapper(served)
        pred = T.translate("rare", table, "keyword-query")
        result = w.execute_find(FindRequest(table=table, predicate=pred))
        assert len(result.rows) == 40
        assert result.provenance[0].call_count == 1

    def test_or_clauses_issue_one_search_each(self, served):
        w, table = http_wrapper(served)
        pred = T.translate("'rare' or 'filler'", table, "keyword-query")
        result = w.execute_find(FindRequest(table=table, predicate=pred))
        assert len(result.rows) == 250  # union, deduplicated
        assert result.provenance[0].call_count == 1 + 3

    def test_probe_by_title(self, served):
        w, table = http_wrapper(served)
        result = w.execute_probe_batch(
            FindRequest(table=table, bindings=(Binding(column="title"),)),
            ["doc 3", "doc 999"],
        )
        assert [r[0] for r in result.rows] == ["doc 3"]
        assert result.provenance[0].call_count == 2

    def test_probe_other_columns_unsupported(self, served):
        w, table = http_wrapper(served)
        with pytest.raises(WrapperError, match="probe by title"):
            w.execute_probe_batch(
                FindRequest(table=table, bindings=(Binding(column="text"),)), ["x"]
            )

    def test_unfiltered_fetch_unsupported(self, served):
        w, table = http_wrapper(served)
        with pytest.raises(WrapperError, match="enumeration"):
            w.execute_find(FindRequest(table=table))


class TestPartialResults:
    def test_capped_window_raises_partial_result(self, tmp_path):
        server = FixtureServer(
            corpus_dir(tmp_path, docs_common_rare()), "WEB", max_window=120
        ).start()
        try:
            w, table = http_wrapper(server)
            pred = T.translate("common", table, "keyword-query")
            with pytest.raises(PartialResultError):
                w.execute_find(FindRequest(table=table, predicate=pred))
            # a query inside the window still succeeds
            pred = T.translate("rare", table, "keyword-query")
            assert len(w.execute_find(FindRequest(table=table, predicate=pred)).rows) == 40
        finally:
            server.stop()
