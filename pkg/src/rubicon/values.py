"""Semantic value types and coercion at the wrapper boundary.

The data model is closed over five column types: text, integer, real, date,
boolean.  Wrappers coerce whatever their native source returns into these
types (or null) before rows enter the engine.
"""

from __future__ import annotations

import datetime as _dt
from typing import Any, Optional

SEMANTIC_TYPES = ("text", "integer", "real", "date", "boolean")

Value = Optional[object]  # str | int | float | datetime.date | bool | None


def parse_date(text: str) -> _dt.date:
    return _dt.date.fromisoformat(text.strip())


def coerce(value: Any, sem_type: str) -> Value:
    """Coerce a native value into the given semantic type, or None.

    Raises ValueError when the value cannot represent the type; missing
    native fields should be passed as None and stay None.
    """
    if value is None:
        return None
    if sem_type == "text":
        if isinstance(value, str):
            return value
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, _dt.date):
            return value.isoformat()
        return str(value)
    if sem_type == "integer":
        if isinstance(value, bool):
            raise ValueError(f"boolean {value!r} is not an integer")
        if isinstance(value, int):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        if isinstance(value, str):
            return int(value.strip())
        raise ValueError(f"{value!r} is not an integer")
    if sem_type == "real":
        if isinstance(value, bool):
            raise ValueError(f"boolean {value!r} is not a real")
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            return float(value.strip())
        raise ValueError(f"{value!r} is not a real")
    if sem_type == "date":
        if isinstance(value, _dt.date):
            return value
        if isinstance(value, str):
            return parse_date(value)
        raise ValueError(f"{value!r} is not a date")
    if sem_type == "boolean":
        if isinstance(value, bool):
            return value
        if isinstance(value, str):
            low = value.strip().lower()
            if low in ("true", "yes", "1"):
                return True
            if low in ("false", "no", "0"):
                return False
        raise ValueError(f"{value!r} is not a boolean")
    raise ValueError(f"unknown semantic type {sem_type!r}")


def conforms(value: Value, sem_type: str) -> bool:
    """True when the value matches its column's semantic type or is null."""
    if value is None:
        return True
    if sem_type == "text":
        return isinstance(value, str)
    if sem_type == "integer":
        return isinstance(value, int) and not isinstance(value, bool)
    if sem_type == "real":
        return isinstance(value, float) or (
            isinstance(value, int) and not isinstance(value, bool)
        )
    if sem_type == "date":
        return isinstance(value, _dt.date)
    if sem_type == "boolean":
        return isinstance(value, bool)
    return False


def to_json_value(value: Value) -> Any:
    if isinstance(value, _dt.date):
        return value.isoformat()
    return value


def from_json_value(value: Any, sem_type: str) -> Value:
    if value is None:
        return None
    return coerce(value, sem_type)


_TYPE_RANK = {"boolean": 0, "integer": 1, "real": 1, "date": 2, "text": 3}


def sort_key(value: Value, sem_type: str):
    """Total order over values of one column, nulls first.

    Integers and reals share a rank so mixed numeric columns compare
    numerically; everything else compares within its own type.
    """
    if value is None:
        return (0, 0, "")
    if isinstance(value, bool):
        return (1, _TYPE_RANK["boolean"], int(value))
    if isinstance(value, (int, float)):
        return (1, _TYPE_RANK["integer"], float(value))
    if isinstance(value, _dt.date):
        return (1, _TYPE_RANK["date"], value.toordinal())
    return (1, _TYPE_RANK["text"], str(value))
