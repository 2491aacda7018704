"""FastAPI application over one shared engine.

Sessions are isolated workspaces; statement submissions within a session
are serialized in arrival order (a per-session lock), while distinct
sessions run concurrently.  Statements execute synchronously in interactive
mode under a configurable timeout.  Payload field names are fixed in
docs/api.md and covered by contract tests.
"""

from __future__ import annotations

import concurrent.futures
import threading
from pathlib import Path
from typing import Dict, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..aql import SchemaQuery
from ..engine import Engine, Session
from ..errors import EngineError, NotFoundError
from ..table import ResultTable
from ..values import to_json_value


class CreateSessionBody(BaseModel):
    principal: str = "analyst"


class StatementBody(BaseModel):
    text: str


def _schema_json(table: ResultTable) -> list:
    return [{"name": c.name, "type": c.type} for c in table.schema]


def _rows_json(table: ResultTable, offset: int = 0, limit: Optional[int] = None) -> list:
    rows = table.rows[offset : offset + limit if limit is not None else None]
    return [[to_json_value(v) for v in row] for row in rows]


def create_app(
    engine: Engine,
    statement_timeout: float = 30.0,
    ui_dir: Optional[str] = None,
) -> FastAPI:
    app = FastAPI(title="rubicon", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: Dict[str, Session] = {}
    lock = threading.Lock()
    pool = concurrent.futures.ThreadPoolExecutor(max_workers=16)
    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=Path(ui_dir), html=True), name="ui")

    def get_session(session_id: str) -> Session:
        with lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    @app.post("/sessions")
    def create_session(body: CreateSessionBody = CreateSessionBody()):
        session = engine.new_session(principal=body.principal)
        with lock:
            sessions[session.session_id] = session
        return {
            "session_id": session.session_id,
            "principal": session.principal,
            "created_at": session.created_at,
        }

    @app.post("/sessions/{session_id}/statements")
    def submit_statement(session_id: str, body: StatementBody):
        session = get_session(session_id)
        future = pool.submit(session.run_interactive, body.text)
        try:
            table, metrics = future.result(timeout=statement_timeout)
        except EngineError as err:
            return JSONResponse(status_code=422, content={"error": err.payload()})
        except concurrent.futures.TimeoutError:
            return JSONResponse(
                status_code=422,
                content={"error": {"stage": "execute",
                                   "message": f"statement timed out after {statement_timeout}s"}},
            )
        entry = session.log[-1]
        return {
            "result": {
                "name": entry.result_name,
                "schema": _schema_json(table),
                "row_count": len(table.rows),
            },
            "plan": entry.plan_text,
            "metrics": metrics.as_json(),
        }

    @app.get("/sessions/{session_id}/tables")
    def list_tables(session_id: str):
        session = get_session(session_id)
        return {
            "tables": [
                {
                    "name": name,
                    "row_count": len(table.rows),
                    "schema": _schema_json(table),
                }
                for name, table in session.workspace.items()
            ]
        }

    @app.get("/sessions/{session_id}/tables/{name}")
    def get_table(session_id: str, name: str, offset: int = 0, limit: int = 100):
        session = get_session(session_id)
        if name not in session.workspace:
            raise HTTPException(status_code=404, detail=f"unknown table {name!r}")
        table = session.workspace[name]
        return {
            "name": name,
            "schema": _schema_json(table),
            "total": len(table.rows),
            "offset": offset,
            "limit": limit,
            "rows": _rows_json(table, offset, limit),
        }

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        session = get_session(session_id)
        return {"log": [entry.as_json() for entry in session.log]}

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str):
        session = get_session(session_id)
        entries = [e for e in session.log if e.status == "ok"]
        return {
            "statements": len(session.log),
            "tool_calls": sum(e.metrics.tool_calls for e in entries),
            "tokens_in": sum(e.metrics.tokens_in for e in entries),
            "tokens_out": sum(e.metrics.tokens_out for e in entries),
            "provider_cost": sum(e.metrics.provider_cost for e in entries),
            "per_source_calls": _per_source(entries),
        }

    def _per_source(entries) -> dict:
        out: dict = {}
        for entry in entries:
            for p in entry.provenance:
                if p.kind == "native":
                    out[p.source] = out.get(p.source, 0) + p.call_count
        return out

    @app.get("/catalog/sources")
    def catalog_sources():
        return {
            "sources": [
                {
                    "name": d.name,
                    "wrapper_kind": d.wrapper_kind,
                    "tables": [t.qualified_name for t in d.tables],
                }
                for d in engine.catalog.sources()
            ]
        }

    @app.get("/catalog/sources/{name}")
    def catalog_source(name: str):
        try:
            desc = engine.catalog.source(name)
        except NotFoundError as err:
            raise HTTPException(status_code=404, detail=err.message)
        return {
            "name": desc.name,
            "wrapper_kind": desc.wrapper_kind,
            "tables": [
                {
                    "qualified_name": t.qualified_name,
                    "columns": [{"name": c, "type": s} for c, s in t.columns],
                    "row_estimate": t.row_estimate,
                }
                for t in desc.tables
            ],
        }

    @app.get("/catalog/tables/{name}")
    def catalog_table(name: str):
        try:
            schema = engine.catalog.resolve_table(name)
        except EngineError as err:
            raise HTTPException(status_code=404, detail=err.message)
        return {
            "qualified_name": schema.qualified_name,
            "source": schema.source,
            "columns": [{"name": c, "type": s} for c, s in schema.columns],
            "row_estimate": schema.row_estimate,
            "per_call_cost": schema.per_call_cost,
            "per_row_cost": schema.per_row_cost,
        }

    return app
