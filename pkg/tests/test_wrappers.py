import pytest

from rubicon.catalog import SourceDescriptor, TableSchema
from rubicon.errors import AccessDenied, ExecutionError, NotFoundError, WrapperError
from rubicon.translator import DeterministicTranslator
from rubicon.wrappers import (
    AccessPolicy,
    AccessRule,
    Binding,
    FindRequest,
    build_wrapper,
)

from .conftest import inline_source

T = DeterministicTranslator()


def wrapper_for(catalog, source):
    return build_wrapper(catalog.source(source))


class TestExecuteFind:
    def test_mailbox_predicate_filters_matching_rows(self, catalog):
        w = build_wrapper(catalog.source("EMAIL"))
        table = w.table("Message")
        pred = T.translate("from = alice@example.org", table, "mail-filter")
        result = w.execute_find(FindRequest(table=table, predicate=pred, principal="me"))
        froms = {r[0] for r in result.rows}
        assert froms == {"alice@example.org"}
        assert len(result.rows) == 3  # two thread turns plus the lunch note
        assert result.provenance[0].call_count == 1

    def test_corpus_keyword_conjunctive_and_ranked(self, mini_catalog):
        w = build_wrapper(mini_catalog.source("NOTES"))
        table = w.table("memos")
        pred = T.translate("notes about 'Turing Award'", table, "keyword-query")
        result = w.execute_find(FindRequest(table=table, predicate=pred))
        assert [r[0] for r in result.rows] == ["Ada Byron"]
        assert result.provenance[0].call_count == 1

    def test_corpus_ranking_by_term_frequency(self):
        from rubicon.catalog import Catalog

        cat = Catalog()
        cat.register_source(
            inline_source(
                "C", "document-corpus",
                {"docs": (
                    [("title", "text"), ("text", "text")],
                    [
                        {"title": "once", "text": "falcon"},
                        {"title": "thrice", "text": "falcon falcon falcon"},
                        {"title": "none", "text": "sparrow"},
                    ],
                )},
            )
        )
        w = build_wrapper(cat.source("C"))
        table = w.table("docs")
        pred = T.translate("falcon", table, "keyword-query")
        result = w.execute_find(FindRequest(table=table, predicate=pred))
        assert [r[0] for r in result.rows] == ["thrice", "once"]

    def test_unfiltered_star_scan_returns_fixture_cardinality(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        table = w.table("faculty")
        result = w.execute_find(FindRequest(table=table))
        assert len(result.rows) == 50
        assert result.column_names == table.column_names

    def test_projection_applied_inside_wrapper(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        table = w.table("faculty")
        result = w.execute_find(FindRequest(table=table, projections=("full_name",)))
        assert result.column_names == ("full_name",)

    def test_unknown_projection_rejected(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        with pytest.raises(NotFoundError):
            w.execute_find(FindRequest(table=w.table("faculty"), projections=("nope",)))

    def test_dialect_mismatch(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        table = w.table("faculty")
        pred = T.translate("professors", w.table("faculty"), "fact-lookup")
        with pytest.raises(WrapperError, match="dialect mismatch"):
            w.execute_find(FindRequest(table=table, predicate=pred))

    def test_limit_truncates(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        result = w.execute_find(FindRequest(table=w.table("faculty"), limit=5))
        assert len(result.rows) == 5


class TestProbeBatch:
    def test_corpus_probe_by_names_counts_one_call_per_value(self, catalog):
        w = build_wrapper(catalog.source("WIKIPEDIA"))
        table = w.table("Page")
        dw = build_wrapper(catalog.source("UNIVERSITY_DW"))
        names = [r[0] for r in dw.execute_find(
            FindRequest(table=dw.table("faculty"), projections=("full_name",))
        ).rows]
        assert len(names) == 50
        pred = T.translate("'Turing Award' or 'Nobel Prize'", table, "keyword-query")
        result = w.execute_probe_batch(
            FindRequest(table=table, projections=("title",), predicate=pred,
                        bindings=(Binding(column="title", mode="entity"),)),
            names,
        )
        assert result.provenance[0].call_count == 50
        assert w.native_calls == 50  # one native invocation per probed name
        assert len(result.rows) == 3

    def test_empty_value_list_is_a_precondition_error(self, catalog):
        w = build_wrapper(catalog.source("WIKIPEDIA"))
        with pytest.raises(ExecutionError, match="non-empty"):
            w.execute_probe_batch(
                FindRequest(table=w.table("Page"),
                            bindings=(Binding(column="title"),)),
                [],
            )

    def test_relational_probe_three_keys_two_present(self, mini_catalog):
        w = build_wrapper(mini_catalog.source("DW"))
        table = w.table("desks")
        result = w.execute_probe_batch(
            FindRequest(table=table, bindings=(Binding(column="full_name"),)),
            ["Ada Byron", "Emmy Noether", "Nobody Here"],
        )
        assert len(result.rows) == 2
        assert result.provenance[0].call_count == 3

    def test_binding_column_must_exist(self, mini_catalog):
        w = build_wrapper(mini_catalog.source("DW"))
        with pytest.raises(NotFoundError):
            w.execute_probe_batch(
                FindRequest(table=w.table("desks"), bindings=(Binding(column="zz"),)),
                ["x"],
            )


class TestFullScan:
    def test_fixture_full_scan(self, catalog):
        w = build_wrapper(catalog.source("UNIVERSITY_DW"))
        assert len(w.full_scan("faculty").rows) == 50

    def test_empty_table_full_scan(self, mini_catalog):
        from rubicon.catalog import Catalog

        cat = Catalog()
        cat.register_source(
            inline_source("E", "relational-fixture",
                          {"nothing": ([("id", "integer")], [])})
        )
        w = build_wrapper(cat.source("E"))
        assert w.full_scan("nothing").rows == []

    def test_http_wrapper_refuses_enumeration(self):
        desc = SourceDescriptor(
            name="WEB", wrapper_kind="http-api",
            connection={"base_url": "http://127.0.0.1:9"},
            tables=(TableSchema("WEB.pages", "WEB", "pages",
                                (("title", "text"), ("text", "text"))),),
        )
        w = build_wrapper(desc)
        with pytest.raises(WrapperError, match="enumeration"):
            w.full_scan("pages")


class TestAccessControl:
    def policy(self, rules):
        return AccessPolicy([AccessRule(*r) for r in rules])

    def test_deny_rule_blocks_before_any_native_call(self, catalog):
        policy = self.policy([("guest", "EMAIL.*", "deny")])
        w = build_wrapper(catalog.source("EMAIL"), policy)
        with pytest.raises(AccessDenied, match="guest"):
            w.execute_find(FindRequest(table=w.table("Message"), principal="guest"))
        assert w.native_calls == 0

    def test_no_rule_file_defaults_to_allow(self):
        policy = AccessPolicy(None)
        assert policy.authorize("anyone", "X.t") == "allow"

    def test_rule_file_present_defaults_to_deny(self):
        policy = self.policy([("alice", "DW.*", "allow")])
        assert policy.authorize("alice", "DW.t") == "allow"
        assert policy.authorize("alice", "EMAIL.Message") == "deny"
        assert policy.authorize("bob", "DW.t") == "deny"

    def test_first_match_wins(self):
        policy = self.policy([
            ("*", "DW.t", "allow"),
            ("*", "DW.*", "deny"),
        ])
        assert policy.authorize("anyone", "DW.t") == "allow"
        assert policy.authorize("anyone", "DW.u") == "deny"

    def test_deny_is_enforced_for_probes_too(self, catalog):
        policy = self.policy([("guest", "*", "deny")])
        w = build_wrapper(catalog.source("WIKIPEDIA"), policy)
        with pytest.raises(AccessDenied):
            w.execute_probe_batch(
                FindRequest(table=w.table("Page"), principal="guest",
                            bindings=(Binding(column="title"),)),
                ["x"],
            )
        assert w.native_calls == 0

    def test_access_rules_load_from_source_dir(self, tmp_path):
        source = tmp_path / "src"
        source.mkdir()
        (source / "schema.json").write_text(
            '{"tables": [{"name": "t", "columns": [["id", "integer"]]}]}'
        )
        (source / "t.ndjson").write_text('{"id": 1}\n')
        (source / "access.json").write_text(
            '[{"principal": "analyst", "table": "*", "decision": "allow"}]'
        )
        from rubicon.catalog import load_source_dir

        desc = load_source_dir("S", "relational-fixture", source)
        w = build_wrapper(desc)
        assert len(w.execute_find(FindRequest(table=w.table("t"), principal="analyst")).rows) == 1
        with pytest.raises(AccessDenied):
            w.execute_find(FindRequest(table=w.table("t"), principal="guest"))


class TestNullHandling:
    def test_missing_native_fields_become_null_and_fail_predicates(self):
        from rubicon.catalog import Catalog

        cat = Catalog()
        cat.register_source(
            inline_source(
                "N", "relational-fixture",
                {"t": (
                    [("name", "text"), ("age", "integer")],
                    [{"name": "x"}, {"name": "y", "age": 5}],
                )},
            )
        )
        w = build_wrapper(cat.source("N"))
        table = w.table("t")
        full = w.execute_find(FindRequest(table=table))
        assert full.rows == [("x", None), ("y", 5)]
        pred = T.translate("age is under 100", table, "boolean-expression")
        filtered = w.execute_find(FindRequest(table=table, predicate=pred))
        assert filtered.rows == [("y", 5)]
