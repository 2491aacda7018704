"""Benchmark report: per-query rows plus aggregate means, JSON and text."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass(frozen=True)
class QueryResult:
    id: str
    description: str
    correct: bool  # C | I
    sources: Dict[str, int]  # native calls per source
    tool_calls: int
    tokens_in: int
    tokens_out: int
    provider_cost: float
    ttft_seconds: float
    coverage_pass: bool
    coverage_missing: Tuple[str, ...]
    coverage_irrelevant: Tuple[str, ...]
    optional_used: Tuple[str, ...]
    error: Optional[str] = None

    def as_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "correct": "C" if self.correct else "I",
            "sources": dict(self.sources),
            "tool_calls": self.tool_calls,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "provider_cost": self.provider_cost,
            "ttft_seconds": self.ttft_seconds,
            "coverage": {
                "pass": self.coverage_pass,
                "missing_required": list(self.coverage_missing),
                "irrelevant_called": list(self.coverage_irrelevant),
                "optional_used": list(self.optional_used),
            },
            "error": self.error,
        }


@dataclass(frozen=True)
class BenchReport:
    results: Tuple[QueryResult, ...]
    runtime_seconds: float

    @property
    def accuracy_pct(self) -> float:
        if not self.results:
            return 0.0
        return 100.0 * sum(1 for r in self.results if r.correct) / len(self.results)

    def _mean(self, getter) -> float:
        if not self.results:
            return 0.0
        return sum(getter(r) for r in self.results) / len(self.results)

    @property
    def mean_tool_calls(self) -> float:
        return self._mean(lambda r: r.tool_calls)

    @property
    def mean_tokens_in(self) -> float:
        return self._mean(lambda r: r.tokens_in)

    @property
    def mean_tokens_out(self) -> float:
        return self._mean(lambda r: r.tokens_out)

    @property
    def mean_cost(self) -> float:
        return self._mean(lambda r: r.provider_cost)

    @property
    def mean_ttft(self) -> float:
        return self._mean(lambda r: r.ttft_seconds)

    def all_coverage_pass(self) -> bool:
        return all(r.coverage_pass for r in self.results)

    def as_json(self) -> dict:
        return {
            "queries": [r.as_json() for r in self.results],
            "aggregates": {
                "accuracy_pct": self.accuracy_pct,
                "mean_tool_calls": self.mean_tool_calls,
                "mean_tokens_in": self.mean_tokens_in,
                "mean_tokens_out": self.mean_tokens_out,
                "mean_provider_cost": self.mean_cost,
                "mean_ttft_seconds": self.mean_ttft,
                "coverage_all_pass": self.all_coverage_pass(),
            },
            "runtime_seconds": self.runtime_seconds,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.as_json(), indent=2, sort_keys=True) + "\n"


def render_text(report: BenchReport) -> str:
    """Two text tables mirroring the per-query correctness and the
    aggregated efficiency metrics."""
    lines: List[str] = []
    lines.append("per-query correctness and coverage")
    header = f"{'ID':<4} {'Result':<7} {'k':>3}  {'Coverage':<9} Sources"
    lines.append(header)
    lines.append("-" * len(header))
    for r in report.results:
        sources = ", ".join(f"{s}={n}" for s, n in sorted(r.sources.items()))
        cov = "pass" if r.coverage_pass else "FAIL"
        result = "C" if r.correct else "I"
        lines.append(f"{r.id:<4} {result:<7} {r.tool_calls:>3}  {cov:<9} {sources}")
    lines.append("")
    lines.append(f"accuracy: {report.accuracy_pct:.2f}%")
    lines.append("")
    lines.append("efficiency (means over queries)")
    lines.append(
        f"{'T_in':>8} {'T_out':>8} {'k':>6} {'C ($)':>10} {'TTFT (s)':>10}"
    )
    lines.append(
        f"{report.mean_tokens_in:>8.2f} {report.mean_tokens_out:>8.2f} "
        f"{report.mean_tool_calls:>6.2f} {report.mean_cost:>10.6f} "
        f"{report.mean_ttft:>10.4f}"
    )
    lines.append("")
    lines.append(f"total runtime: {report.runtime_seconds:.3f} s")
    return "\n".join(lines) + "\n"
