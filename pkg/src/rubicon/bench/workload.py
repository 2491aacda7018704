"""Workload files: queries, scripts, ground truth, and relevance labels."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

from ..errors import ExecutionError
from ..table import ResultTable, schema_from_json, table_from_ndjson

RELEVANCE_LABELS = ("R", "O", "I")  # Required / Optional / Irrelevant


@dataclass(frozen=True)
class WorkloadQuery:
    id: str
    description: str
    script: str  # AQL text
    ground_truth: ResultTable
    relevance: Dict[str, str]  # source name -> R | O | I
    insufficiency_probes: Tuple[str, ...] = ()  # AQL texts, one source each

    def required_sources(self) -> List[str]:
        return [s for s, label in self.relevance.items() if label == "R"]

    def irrelevant_sources(self) -> List[str]:
        return [s for s, label in self.relevance.items() if label == "I"]


@dataclass(frozen=True)
class Workload:
    queries: Tuple[WorkloadQuery, ...]


def load_workload(path: str | Path) -> Workload:
    """Load a workload document; referenced files resolve against the
    workload's fixture root (the directory holding `workload/`)."""
    path = Path(path)
    base = path.parent.parent if path.parent.name == "workload" else path.parent
    doc = json.loads(path.read_text())
    queries: List[WorkloadQuery] = []
    for q in doc["queries"]:
        labels = dict(q["relevance"])
        for label in labels.values():
            if label not in RELEVANCE_LABELS:
                raise ExecutionError(f"unknown relevance label {label!r} in {q['id']}")
        required = [s for s, l in labels.items() if l == "R"]
        if len(required) != 2:
            raise ExecutionError(
                f"workload query {q['id']} must have exactly two Required "
                f"sources, found {len(required)}"
            )
        schema = schema_from_json((base / q["ground_truth"]["schema"]).read_text())
        gt = table_from_ndjson(schema, (base / q["ground_truth"]["rows"]).read_text())
        probes = tuple(
            (base / p).read_text() for p in q.get("insufficiency_probes", [])
        )
        queries.append(
            WorkloadQuery(
                id=q["id"],
                description=q["description"],
                script=(base / q["script"]).read_text(),
                ground_truth=gt,
                relevance=labels,
                insufficiency_probes=probes,
            )
        )
    return Workload(queries=tuple(queries))
