"""Benchmark runner: compiled-mode execution, scoring, and coverage checks.

Each query runs in a fresh session in compiled mode; the answer is compared
to ground truth by multiset equality after canonical sorting, and source
coverage is computed from the result's provenance: every Required source
must be called at least once, Irrelevant sources must never be called, and
Optional sources are unconstrained (usage is flagged without penalty).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..engine import Engine
from ..errors import EngineError
from .report import BenchReport, QueryResult
from .workload import Workload, WorkloadQuery


@dataclass(frozen=True)
class CoverageVerdict:
    passed: bool
    missing_required: Tuple[str, ...]
    irrelevant_called: Tuple[str, ...]
    optional_used: Tuple[str, ...]
    composition: Dict[str, int]  # per-source call counts


def coverage_check(sources_consulted: Dict[str, int], relevance: Dict[str, str]) -> CoverageVerdict:
    missing = tuple(
        s for s, label in sorted(relevance.items())
        if label == "R" and sources_consulted.get(s, 0) < 1
    )
    irrelevant = tuple(
        s for s, label in sorted(relevance.items())
        if label == "I" and sources_consulted.get(s, 0) > 0
    )
    optional = tuple(
        s for s, label in sorted(relevance.items())
        if label == "O" and sources_consulted.get(s, 0) > 0
    )
    return CoverageVerdict(
        passed=not missing and not irrelevant,
        missing_required=missing,
        irrelevant_called=irrelevant,
        optional_used=optional,
        composition=dict(sources_consulted),
    )


def _run_query(engine: Engine, query: WorkloadQuery, principal: str) -> QueryResult:
    session = engine.new_session(principal=principal)
    try:
        table, metrics = session.run_compiled(query.script)
    except EngineError as err:
        raise EngineError(f"benchmark query {query.id} failed: {err.message}") from err
    sources = table.sources_consulted()
    verdict = coverage_check(sources, query.relevance)
    correct = table.multiset_equal(query.ground_truth)
    return QueryResult(
        id=query.id,
        description=query.description,
        correct=correct,
        sources=sources,
        tool_calls=metrics.tool_calls,
        tokens_in=metrics.tokens_in,
        tokens_out=metrics.tokens_out,
        provider_cost=metrics.provider_cost,
        ttft_seconds=metrics.ttft_seconds,
        coverage_pass=verdict.passed,
        coverage_missing=verdict.missing_required,
        coverage_irrelevant=verdict.irrelevant_called,
        optional_used=verdict.optional_used,
    )


def run_benchmark(
    workload: Workload,
    engine: Engine,
    principal: str = "me@example.org",
    parallel: bool = False,
) -> BenchReport:
    started = time.perf_counter()
    for query in workload.queries:
        for source in query.relevance:
            engine.catalog.source(source)  # unknown source aborts with the id
    if parallel:
        with ThreadPoolExecutor(max_workers=len(workload.queries) or 1) as pool:
            results = list(
                pool.map(lambda q: _run_query(engine, q, principal), workload.queries)
            )
    else:
        results = [_run_query(engine, q, principal) for q in workload.queries]
    return BenchReport(
        results=tuple(results), runtime_seconds=time.perf_counter() - started
    )
