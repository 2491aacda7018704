"""Execution engine: sessions, workspaces, the plan executor, metrics."""

from .executor import PlanExecutor
from .session import Engine, LogEntry, MetricsRecord, Session

__all__ = ["Engine", "LogEntry", "MetricsRecord", "PlanExecutor", "Session"]
