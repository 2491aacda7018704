"""HTTP layer exposing sessions, statements, tables, plans, and metrics."""

from .app import create_app

__all__ = ["create_app"]
