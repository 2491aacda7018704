"""Error hierarchy.

Every user-facing failure is an :class:`EngineError` carrying the pipeline
stage it belongs to, so the REPL and the HTTP layer can report structured
errors ({stage, message, offset?}) without string matching.
"""

from __future__ import annotations

from typing import Optional


class EngineError(Exception):
    """Base class for all engine errors."""

    stage = "execute"

    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.offset = offset

    def payload(self) -> dict:
        out = {"stage": self.stage, "message": self.message}
        if self.offset is not None:
            out["offset"] = self.offset
        return out


class LexError(EngineError):
    stage = "parse"


class ParseError(EngineError):
    stage = "parse"


class TranslationError(EngineError):
    stage = "translate"


class UntranslatableError(TranslationError):
    """The utterance has no translatable content for the target dialect."""


class DialectError(TranslationError):
    """The utterance is meaningful but the target dialect cannot express it.

    The planner treats this as "do not push down"; it is only surfaced to the
    user when local evaluation is impossible as well.
    """


class PlanError(EngineError):
    stage = "plan"


class CatalogError(PlanError):
    """Registration and resolution failures."""


class NotFoundError(CatalogError):
    """Unknown source, table, or column; the message echoes the name."""


class ExecutionError(EngineError):
    stage = "execute"


class AccessDenied(ExecutionError):
    """Request rejected by an access rule, before any native call."""


class WrapperError(ExecutionError):
    """Native-source failure, wrapped with the source name."""


class PartialResultError(WrapperError):
    """An upstream API capped the result set; never silently truncated."""
