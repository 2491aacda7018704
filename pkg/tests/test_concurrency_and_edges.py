import threading

import pytest

from rubicon.catalog import Catalog, SourceDescriptor, TableSchema
from rubicon.engine import Engine
from rubicon.errors import CatalogError

from .conftest import inline_source


class TestConcurrentSessions:
    def test_distinct_sessions_share_one_engine_safely(self, engine):
        errors = []
        results = {}

        def work(i):
            try:
                session = engine.new_session(principal="me@example.org")
                session.run_interactive("SAVE (FIND full_name FROM faculty) AS mine")
                table, metrics = session.run_interactive(
                    "FIND full_name FROM mine WHERE the full name contains a"
                )
                results[i] = (len(session.workspace), metrics.tool_calls)
            except Exception as exc:  # noqa: BLE001 - collect everything
                errors.append(exc)

        threads = [threading.Thread(target=work, args=(i,)) for i in range(12)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        # every session got its own isolated `mine` plus zero-call local reuse
        assert all(v == (2, 0) for v in results.values())

    def test_one_session_serializes_concurrent_statements(self, engine):
        session = engine.new_session(principal="me@example.org")
        errors = []

        def submit():
            try:
                session.run_interactive("FIND name FROM buildings")
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [threading.Thread(target=submit) for _ in range(10)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        assert set(session.workspace) == {f"_r{i}" for i in range(1, 11)}


class TestConcurrentCatalogWrites:
    def test_registrations_are_serialized(self):
        cat = Catalog()
        failures = []

        def register(i):
            try:
                cat.register_source(
                    inline_source(f"S{i}", "relational-fixture",
                                  {f"t{i}": ([("id", "integer")], [])})
                )
            except CatalogError as exc:
                failures.append(exc)

        threads = [threading.Thread(target=register, args=(i,)) for i in range(16)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not failures
        assert len(cat.sources()) == 16

    def test_statistics_updates_remain_consistent(self, catalog):
        def bump(value):
            catalog.set_statistics("faculty", row_estimate=value)

        threads = [threading.Thread(target=bump, args=(v,)) for v in range(1, 21)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        final = catalog.resolve_table("faculty").row_estimate
        assert 1 <= final <= 20
        # both lookup paths observe the same snapshot
        assert catalog.resolve_table("UNIVERSITY_DW.faculty").row_estimate == final


class TestJoinKeySemantics:
    @pytest.fixture()
    def keyed_engine(self):
        cat = Catalog()
        cat.register_source(
            inline_source(
                "L", "relational-fixture",
                {"measurements": (
                    [("sensor", "integer"), ("reading", "real"), ("day", "date")],
                    [
                        {"sensor": 1, "reading": 1.5, "day": "2026-01-01"},
                        {"sensor": 2, "reading": 2.5, "day": "2026-01-02"},
                        {"sensor": None, "reading": 9.9, "day": "2026-01-03"},
                    ],
                )},
            )
        )
        cat.register_source(
            inline_source(
                "R", "relational-fixture",
                {"sensors": (
                    [("sensor", "real"), ("label", "text")],
                    [
                        {"sensor": 1.0, "label": "alpha"},
                        {"sensor": 3.0, "label": "gamma"},
                        {"sensor": None, "label": "ghost"},
                    ],
                )},
            )
        )
        return Engine(cat)

    def test_numeric_keys_join_across_integer_and_real(self, keyed_engine):
        session = keyed_engine.new_session()
        table, _ = session.run_interactive(
            "FIND sensor, reading FROM measurements JOIN FIND sensor, label FROM sensors"
        )
        # natural join on `sensor`: 1 (int) matches 1.0 (real); nulls never join
        assert table.rows == [(1, 1.5, "alpha")]

    def test_date_keys_join(self):
        cat = Catalog()
        cat.register_source(
            inline_source(
                "D", "relational-fixture",
                {"a": ([("day", "date"), ("x", "integer")],
                        [{"day": "2026-01-01", "x": 1}, {"day": "2026-01-02", "x": 2}]),
                 "b": ([("day", "date"), ("y", "integer")],
                        [{"day": "2026-01-02", "y": 20}])},
            )
        )
        import datetime

        session = Engine(cat).new_session()
        table, _ = session.run_interactive("FIND day, x FROM a JOIN FIND day, y FROM b")
        assert table.rows == [(datetime.date(2026, 1, 2), 2, 20)]


class TestProvenanceChain:
    def test_workspace_derivations_record_their_inputs(self, session):
        session.run_interactive("FIND full_name FROM faculty")
        table, _ = session.run_interactive("SAVE (FIND full_name FROM _r1) AS copied")
        kinds = {(p.kind, p.source) for p in table.provenance}
        assert ("workspace", "_r1") in kinds
        assert all(
            p.kind == "native" or p.source in session.workspace or p.source == "_r1"
            for p in table.provenance
        )

    def test_catalog_scan_provenance_names_the_source(self, session):
        table, _ = session.run_interactive("FIND full_name FROM faculty")
        assert [(p.kind, p.source) for p in table.provenance] == [
            ("native", "UNIVERSITY_DW")
        ]


class TestOptimizerChosenProbeExecution:
    def test_chosen_probe_plan_produces_correct_rows(self):
        cat = Catalog()
        cat.register_source(
            inline_source(
                "A", "relational-fixture",
                {"tiny": ([("k", "text")], [{"k": "x"}, {"k": "y"}])},
            )
        )
        cat.register_source(
            inline_source(
                "B", "relational-fixture",
                {"huge": ([("k", "text"), ("v", "integer")],
                           [{"k": "x", "v": 1}, {"k": "z", "v": 3}])},
            )
        )
        cat.set_statistics("huge", row_estimate=1_000_000, per_row_cost=0.01)
        engine = Engine(cat)
        session = engine.new_session()
        table, metrics = session.run_interactive(
            "FIND k FROM tiny JOIN FIND v FROM huge ON k = k"
        )
        assert "ProbeJoin" in session.log[-1].plan_text
        assert table.rows == [("x", 1)]
        # one bulk scan of the bound side plus one probe per bound row
        assert metrics.tool_calls == 1 + 2
