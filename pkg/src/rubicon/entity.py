"""Entity-name normalization for cross-source name equality.

Used by EntityMatch join conditions and entity-mode probe bindings: case
fold, strip punctuation, collapse whitespace, and drop leading honorifics,
so "Prof. Ada  Lovelace" joins "ada lovelace".
"""

from __future__ import annotations

import re

_HONORIFICS = frozenset(
    ["dr", "prof", "professor", "mr", "mrs", "ms", "mx", "sir", "dame", "lord", "lady"]
)

_PUNCT_RE = re.compile(r"[.,;:!?'\"()\[\]]")


def normalize_entity(text: str) -> str:
    cleaned = _PUNCT_RE.sub(" ", text.casefold())
    words = cleaned.split()
    while words and words[0] in _HONORIFICS:
        words = words[1:]
    return " ".join(words)
