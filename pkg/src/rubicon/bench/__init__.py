"""Benchmark harness: the multi-source workload runner and scorer."""

from .runner import CoverageVerdict, coverage_check, run_benchmark
from .report import BenchReport, QueryResult, render_text
from .workload import Workload, WorkloadQuery, load_workload

__all__ = [
    "BenchReport",
    "CoverageVerdict",
    "QueryResult",
    "Workload",
    "WorkloadQuery",
    "coverage_check",
    "load_workload",
    "render_text",
    "run_benchmark",
]
