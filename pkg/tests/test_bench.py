import dataclasses
import json

import pytest

from rubicon.bench import (
    coverage_check,
    load_workload,
    render_text,
    run_benchmark,
)
from rubicon.errors import EngineError
from rubicon.table import ResultTable


@pytest.fixture()
def workload(fixtures_path):
    return load_workload(fixtures_path / "workload" / "workload.json")


class TestCoverageCheck:
    RELEVANCE = {"WIKIPEDIA": "I", "UNIVERSITY_DW": "I", "LAB_SITE": "I",
                 "PILE_LLM": "R", "EMAIL": "R"}

    def test_required_pair_consulted_passes(self):
        verdict = coverage_check({"EMAIL": 1, "PILE_LLM": 1}, self.RELEVANCE)
        assert verdict.passed
        assert verdict.composition == {"EMAIL": 1, "PILE_LLM": 1}

    def test_irrelevant_source_fails_and_is_named(self):
        verdict = coverage_check(
            {"EMAIL": 1, "PILE_LLM": 1, "WIKIPEDIA": 2}, self.RELEVANCE
        )
        assert not verdict.passed
        assert verdict.irrelevant_called == ("WIKIPEDIA",)

    def test_empty_trace_fails_with_both_required_missing(self):
        verdict = coverage_check({}, self.RELEVANCE)
        assert not verdict.passed
        assert verdict.missing_required == ("EMAIL", "PILE_LLM")

    def test_optional_usage_is_flagged_without_penalty(self):
        relevance = dict(self.RELEVANCE, LAB_SITE="O")
        verdict = coverage_check(
            {"EMAIL": 1, "PILE_LLM": 1, "LAB_SITE": 3}, relevance
        )
        assert verdict.passed
        assert verdict.optional_used == ("LAB_SITE",)


class TestWorkloadFile:
    def test_every_query_has_exactly_two_required_sources(self, workload):
        for q in workload.queries:
            assert len(q.required_sources()) == 2

    def test_relevance_matches_table_layout(self, workload):
        by_id = {q.id: q.relevance for q in workload.queries}
        assert by_id["Q3"] == {"WIKIPEDIA": "R", "UNIVERSITY_DW": "R",
                               "LAB_SITE": "O", "PILE_LLM": "I", "EMAIL": "I"}
        assert by_id["Q4"]["PILE_LLM"] == "R" and by_id["Q4"]["EMAIL"] == "R"


class TestBenchmarkRun:
    def test_full_run_is_perfect_and_bounded(self, workload, engine):
        report = run_benchmark(workload, engine)
        assert report.accuracy_pct == 100.0
        assert report.mean_tool_calls == 2.0
        assert report.all_coverage_pass()
        assert report.mean_tokens_in == 0.0
        assert report.mean_tokens_out == 0.0
        assert report.mean_cost == 0.0
        assert report.runtime_seconds < 10.0
        for r in report.results:
            assert r.tool_calls == 2
            assert not r.coverage_irrelevant

    def test_parallel_run_scores_identically(self, workload, engine):
        serial = run_benchmark(workload, engine)
        parallel = run_benchmark(workload, engine, parallel=True)
        assert [r.correct for r in serial.results] == [r.correct for r in parallel.results]
        assert serial.mean_tool_calls == parallel.mean_tool_calls

    def test_corrupted_ground_truth_marks_query_incorrect(self, workload, engine):
        queries = list(workload.queries)
        q2 = queries[1]
        assert q2.id == "Q2"
        bad_gt = ResultTable(schema=q2.ground_truth.schema, rows=[(999,)])
        queries[1] = dataclasses.replace(q2, ground_truth=bad_gt)
        tampered = dataclasses.replace(workload, queries=tuple(queries))
        report = run_benchmark(tampered, engine)
        by_id = {r.id: r.correct for r in report.results}
        assert not by_id["Q2"]
        assert sum(1 for ok in by_id.values() if ok) == 6
        assert report.accuracy_pct == pytest.approx(100 * 6 / 7)

    def test_report_text_mirrors_tables(self, workload, engine):
        report = run_benchmark(workload, engine)
        text = render_text(report)
        assert "accuracy: 100.00%" in text
        assert "efficiency (means over queries)" in text
        for qid in ["Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7"]:
            assert qid in text

    def test_report_is_deterministic_given_fixtures(self, workload, engine):
        def stripped(report):
            doc = report.as_json()
            doc.pop("runtime_seconds")
            for q in doc["queries"]:
                q.pop("ttft_seconds")
            doc["aggregates"].pop("mean_ttft_seconds")
            return json.dumps(doc, sort_keys=True)

        first = run_benchmark(workload, engine)
        second = run_benchmark(workload, engine)
        assert stripped(first) == stripped(second)

    def test_report_json_shape(self, workload, engine):
        report = run_benchmark(workload, engine)
        doc = json.loads(report.to_json_text())
        assert doc["aggregates"]["accuracy_pct"] == 100.0
        assert doc["aggregates"]["mean_tool_calls"] == 2.0
        assert len(doc["queries"]) == 7


class TestGroundTruthConstruction:
    """The workload construction checks: required-source fixtures suffice
    (the benchmark run itself), and no single source alone reproduces an
    answer (scripted single-source probes)."""

    def test_single_source_probes_cannot_reproduce_answers(self, workload, engine):
        for q in workload.queries:
            assert q.insufficiency_probes, f"{q.id} ships no probes"
            for probe in q.insufficiency_probes:
                session = engine.new_session(principal="me@example.org")
                table, metrics = session.run_compiled(probe)
                assert len(table.sources_consulted()) <= 1, (
                    f"{q.id} probe touched multiple sources"
                )
                assert not table.multiset_equal(q.ground_truth), (
                    f"{q.id} probe reproduced the answer:\n{probe}"
                )

    def test_benchmark_scripts_touch_only_required_sources(self, workload, engine):
        for q in workload.queries:
            session = engine.new_session(principal="me@example.org")
            table, _ = session.run_compiled(q.script)
            assert set(table.sources_consulted()) == set(q.required_sources())
