"""Sessions: interactive statement-at-a-time execution and compiled scripts.

A session owns a workspace of named, inspectable intermediate tables and an
append-only statement log with per-statement metrics.  Interactive results
are auto-named ``_rN`` unless SAVE names them; compiled scripts fuse into a
composite plan whose SAVEs are script-local intermediates, binding only the
final result (and writing OUTPUT sinks).  A failed statement leaves the
workspace exactly as it was.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..aql import (
    DeleteStatement,
    FindQuery,
    OutputStatement,
    SaveStatement,
    SchemaQuery,
    Statement,
    parse_script,
    parse_statement,
    render_statement,
)
from ..catalog import Catalog
from ..errors import (
    EngineError,
    ExecutionError,
    NotFoundError,
    PlanError,
)
from ..plan import (
    CostModel,
    PhysicalNode,
    Resolver,
    build_script,
    build_statement,
    explain,
    optimize,
)
from ..plan.nodes import PProbeJoin, PLocalFilter, PScan, PSink, walk
from ..table import Column, ProvenanceEntry, ResultTable
from ..translator import DeterministicTranslator
from ..wrappers import Wrapper, build_wrapper


@dataclass(frozen=True)
class MetricsRecord:
    """Per-statement counters: tokens in/out, tool calls, provider cost, TTFT."""

    tokens_in: int = 0
    tokens_out: int = 0
    tool_calls: int = 0
    provider_cost: float = 0.0
    ttft_seconds: float = 0.0

    def as_json(self) -> dict:
        return {
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "tool_calls": self.tool_calls,
            "provider_cost": self.provider_cost,
            "ttft_seconds": self.ttft_seconds,
        }


@dataclass
class LogEntry:
    statement_text: str
    result_name: Optional[str]
    row_count: int
    plan_text: Optional[str]
    provenance: Tuple[ProvenanceEntry, ...]
    metrics: MetricsRecord
    status: str = "ok"  # "ok" | "error"
    error: Optional[dict] = None
    traces: Tuple = ()  # TranslationTrace per translated utterance

    def as_json(self) -> dict:
        return {
            "statement": self.statement_text,
            "result_name": self.result_name,
            "row_count": self.row_count,
            "plan": self.plan_text,
            "provenance": [p.as_json() for p in self.provenance],
            "metrics": self.metrics.as_json(),
            "status": self.status,
            "error": self.error,
            "traces": [tr.as_json() for tr in self.traces],
        }


def _plan_traces(plans: Sequence[PhysicalNode]) -> Tuple:
    out = []
    for plan in plans:
        for node in walk(plan):
            out.extend(getattr(node, "traces", ()))
    return tuple(out)


def _plan_metrics(plans: Sequence[PhysicalNode], entries, elapsed: float) -> MetricsRecord:
    tokens_in = tokens_out = 0
    cost = 0.0
    for trace in _plan_traces(plans):
        tokens_in += trace.tokens_in
        tokens_out += trace.tokens_out
        cost += trace.provider_cost
    calls = sum(e.call_count for e in entries if e.kind == "native")
    return MetricsRecord(
        tokens_in=tokens_in,
        tokens_out=tokens_out,
        tool_calls=calls,
        provider_cost=cost,
        ttft_seconds=elapsed,
    )


class Engine:
    """Shared catalog + wrappers + translator + cost model."""

    def __init__(
        self,
        catalog: Catalog,
        translator=None,
        cost_model: Optional[CostModel] = None,
    ):
        self.catalog = catalog
        self.translator = translator or DeterministicTranslator()
        self.cost_model = cost_model or CostModel()
        self._wrappers: Dict[str, Wrapper] = {}
        self._lock = threading.Lock()

    def wrapper_for(self, source_name: str) -> Wrapper:
        with self._lock:
            if source_name not in self._wrappers:
                self._wrappers[source_name] = build_wrapper(
                    self.catalog.source(source_name)
                )
            return self._wrappers[source_name]

    def new_session(self, principal: str = "analyst") -> "Session":
        return Session(self, principal)


class Session:
    def __init__(self, engine: Engine, principal: str = "analyst",
                 session_id: Optional[str] = None):
        self.engine = engine
        self.principal = principal
        self.session_id = session_id or uuid.uuid4().hex
        self.created_at = time.time()
        self.workspace: Dict[str, ResultTable] = {}
        self.log: List[LogEntry] = []
        self._pending_stdout: List[str] = []
        self._lock = threading.RLock()

    # --- helpers -----------------------------------------------------------------

    def pop_stdout_outputs(self) -> List[str]:
        """OUTPUT payloads destined for standard output, cleared on read."""
        out, self._pending_stdout = self._pending_stdout, []
        return out

    def workspace_table(self, name: str) -> ResultTable:
        if name not in self.workspace:
            raise NotFoundError(f"unknown workspace table {name!r}")
        return self.workspace[name]

    def _resolver(self) -> Resolver:
        return Resolver(
            catalog=self.engine.catalog,
            workspace={n: t.schema for n, t in self.workspace.items()},
            workspace_counts={n: len(t.rows) for n, t in self.workspace.items()},
        )

    def _next_auto_name(self) -> str:
        n = 1 + sum(1 for e in self.log if e.status == "ok")
        return f"_r{n}"

    def _bind(self, name: str, table: ResultTable, *, allow_auto: bool = False) -> None:
        if name in self.workspace:
            raise ExecutionError(f"workspace name {name!r} already bound")
        if not allow_auto:
            if self.engine.catalog.has_table(name) or self.engine.catalog.has_source(name):
                raise ExecutionError(
                    f"SAVE name {name!r} collides with a catalog table or source"
                )
        self.workspace[name] = table

    def _log_ok(self, text: str, name: Optional[str], table: Optional[ResultTable],
                plan_text: Optional[str], metrics: MetricsRecord,
                traces: Tuple = ()) -> LogEntry:
        entry = LogEntry(
            statement_text=text,
            result_name=name,
            row_count=len(table.rows) if table is not None else 0,
            plan_text=plan_text,
            provenance=table.provenance if table is not None else (),
            metrics=metrics,
            traces=traces,
        )
        self.log.append(entry)
        return entry

    def _log_error(self, text: str, err: EngineError) -> None:
        self.log.append(
            LogEntry(
                statement_text=text,
                result_name=None,
                row_count=0,
                plan_text=None,
                provenance=(),
                metrics=MetricsRecord(),
                status="error",
                error=err.payload(),
            )
        )

    def _executor(self):
        from .executor import PlanExecutor

        return PlanExecutor(
            wrapper_for=self.engine.wrapper_for,
            workspace_table=self.workspace_table,
            principal=self.principal,
        )

    # --- interactive -----------------------------------------------------------

    def run_interactive(self, stmt: Union[str, Statement]) -> Tuple[ResultTable, MetricsRecord]:
        with self._lock:
            if isinstance(stmt, str):
                try:
                    stmt = parse_statement(stmt)
                except EngineError as err:
                    self._log_error(stmt.strip(), err)
                    raise
            canonical = render_statement(stmt)
            try:
                return self._run_parsed(stmt, canonical)
            except EngineError as err:
                self._log_error(canonical, err)
                raise

    def _run_parsed(self, stmt: Statement, text: str) -> Tuple[ResultTable, MetricsRecord]:
        started = time.perf_counter()
        if isinstance(stmt, SchemaQuery):
            table = self.introspect(stmt)
            metrics = MetricsRecord(ttft_seconds=time.perf_counter() - started)
            name = self._next_auto_name()
            self._bind(name, table, allow_auto=True)
            self._log_ok(text, name, table, None, metrics)
            return table, metrics

        if isinstance(stmt, FindQuery):
            plan = optimize(
                build_statement(stmt, self._resolver()),
                self.engine.cost_model,
                self.engine.translator,
            )
            executor = self._executor()
            table = executor.run(plan)
            elapsed = time.perf_counter() - started
            metrics = _plan_metrics([plan], table.provenance, elapsed)
            plan_text = explain(plan)
            name = self._next_auto_name()
            self._bind(name, table, allow_auto=True)
            self._log_ok(text, name, table, plan_text, metrics, _plan_traces([plan]))
            return table, metrics

        if isinstance(stmt, SaveStatement):
            if stmt.new_table in self.workspace:
                raise ExecutionError(f"workspace name {stmt.new_table!r} already bound")
            plan = optimize(
                build_statement(stmt, self._resolver()),
                self.engine.cost_model,
                self.engine.translator,
            )
            executor = self._executor()
            table = executor.run(plan)
            elapsed = time.perf_counter() - started
            metrics = _plan_metrics([plan], table.provenance, elapsed)
            self._bind(stmt.new_table, table)
            self._log_ok(text, stmt.new_table, table, explain(plan), metrics,
                         _plan_traces([plan]))
            return table, metrics

        if isinstance(stmt, OutputStatement):
            table = self._output_target(stmt.table)
            payload = table.serialize_output()
            if stmt.destination is not None:
                Path(stmt.destination).write_text(payload)
            else:
                self._pending_stdout.append(payload)
            metrics = MetricsRecord(ttft_seconds=time.perf_counter() - started)
            self._log_ok(text, stmt.table, table, None, metrics)
            return table, metrics

        if isinstance(stmt, DeleteStatement):
            name = stmt.table
            if name not in self.workspace:
                if self.engine.catalog.has_table(name):
                    raise ExecutionError(
                        f"cannot delete source table {name!r}; DELETE applies "
                        f"to workspace tables only"
                    )
                raise NotFoundError(f"unknown workspace table {name!r}")
            del self.workspace[name]
            ack = ResultTable(
                schema=(Column("status", "text"),), rows=[(f"deleted {name}",)]
            )
            metrics = MetricsRecord(ttft_seconds=time.perf_counter() - started)
            self._log_ok(text, None, ack, None, metrics)
            return ack, metrics

        raise PlanError(f"unsupported statement {type(stmt).__name__}")

    def _output_target(self, name: str) -> ResultTable:
        if name in self.workspace:
            return self.workspace[name]
        if self.engine.catalog.has_table(name):
            raise ExecutionError(
                f"OUTPUT targets a workspace table; {name!r} is a catalog table "
                f"(SAVE a query as a new table first)"
            )
        raise NotFoundError(f"unknown workspace table {name!r}")

    def introspect(self, query: SchemaQuery) -> ResultTable:
        if query.target is not None and query.target in self.workspace:
            table = self.workspace[query.target]
            rows = [(c.name, c.type) for c in table.schema]
            return ResultTable(
                schema=(Column("column", "text"), Column("type", "text")), rows=rows
            )
        return self.engine.catalog.introspect(query)

    # --- compiled -----------------------------------------------------------------

    def run_compiled(self, script: Union[str, Sequence[Statement]]) -> Tuple[ResultTable, MetricsRecord]:
        with self._lock:
            if isinstance(script, str):
                statements = parse_script(script)
            else:
                statements = list(script)
            if not statements:
                raise PlanError("empty script")
            text = "; ".join(render_statement(s).replace("\n", " ") for s in statements)
            try:
                return self._run_compiled(statements, text)
            except EngineError as err:
                self._log_error(text, err)
                raise

    def _run_compiled(self, statements: Sequence[Statement], text: str) -> Tuple[ResultTable, MetricsRecord]:
        started = time.perf_counter()
        script_plan = build_script(statements, self._resolver())
        shared: Dict[int, PhysicalNode] = {}
        physical_roots = [
            optimize(
                root,
                self.engine.cost_model,
                self.engine.translator,
                shared_ids=script_plan.shared_ids,
                shared=shared,
            )
            for root in script_plan.roots
        ]
        executor = self._executor()
        outputs: List[Tuple[Optional[str], str]] = []  # (destination, payload)
        final_table: Optional[ResultTable] = None
        for root in physical_roots:
            table = executor.run(root)
            if isinstance(root, PSink) and root.kind == "output":
                outputs.append((root.target, table.serialize_output()))
            final_table = table
        assert final_table is not None
        elapsed = time.perf_counter() - started
        final_table = final_table.with_provenance(tuple(executor.entries))
        metrics = _plan_metrics(physical_roots, executor.entries, elapsed)

        # side effects only after the whole script succeeded
        for destination, payload in outputs:
            if destination is not None:
                Path(destination).write_text(payload)
            else:
                self._pending_stdout.append(payload)
        name = script_plan.final_name or self._next_auto_name()
        if name in self.workspace:
            raise ExecutionError(f"workspace name {name!r} already bound")
        self._bind(name, final_table, allow_auto=script_plan.final_name is None)
        plan_text = "\n---\n".join(explain(p) for p in physical_roots)
        self._log_ok(text, name, final_table, plan_text, metrics,
                     _plan_traces(physical_roots))
        return final_table, metrics

    # --- persistence -----------------------------------------------------------------

    def save_workspace(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        lines = [
            e.statement_text + ";" for e in self.log if e.status == "ok"
        ]
        (directory / "log.aql").write_text("\n".join(lines) + ("\n" if lines else ""))
        for name, table in self.workspace.items():
            (directory / f"{name}.schema.json").write_text(table.schema_json() + "\n")
            (directory / f"{name}.ndjson").write_text(table.rows_ndjson())

    @classmethod
    def replay(cls, engine: Engine, directory: str | Path,
               principal: str = "analyst") -> "Session":
        directory = Path(directory)
        session = engine.new_session(principal)
        script = (directory / "log.aql").read_text()
        for stmt in parse_script(script):
            session.run_interactive(stmt)
        return session
