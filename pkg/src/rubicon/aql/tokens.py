"""AQL lexer.

Keywords are recognized case-insensitively.  After WHERE the lexer switches
into utterance mode: the predicate text is captured verbatim as one token,
extending to the next top-level JOIN/ON keyword, a closing parenthesis of an
enclosing SAVE, a statement separator ';', or end of input.  Quoted regions
('…' or "…") inside an utterance are opaque: keywords and separators inside
them do not terminate the capture, and an unterminated quote is a lex error
positioned at the opening quote's byte offset.

`--` starts a line comment outside quoted regions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from ..errors import LexError

KEYWORDS = {
    "FIND",
    "FROM",
    "WHERE",
    "JOIN",
    "ON",
    "SAVE",
    "AS",
    "OUTPUT",
    "DELETE",
}

# Keywords that may legitimately follow a WHERE clause and therefore end an
# utterance.  FIND/FROM/etc. cannot follow a predicate inside one statement,
# so an utterance may mention them freely.
UTTERANCE_TERMINATORS = {"JOIN", "ON"}

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*")

PUNCT = {
    "?": "QMARK",
    "*": "STAR",
    ",": "COMMA",
    "(": "LPAREN",
    ")": "RPAREN",
    "=": "EQ",
    ";": "SEMI",
}


@dataclass(frozen=True)
class Token:
    kind: str  # KEYWORD kinds use the keyword itself (e.g. "FIND")
    text: str
    offset: int  # character offset into the statement text


def byte_offset(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode("utf-8"))


def _lex_quoted(text: str, i: int) -> int:
    """Return the index just past the closing quote, or raise LexError."""
    quote = text[i]
    j = i + 1
    while j < len(text):
        if text[j] == quote:
            return j + 1
        j += 1
    raise LexError(
        f"unterminated quoted literal starting at byte offset {byte_offset(text, i)}",
        offset=byte_offset(text, i),
    )


def _utterance_end(text: str, start: int, paren_depth: int) -> int:
    """Scan forward from `start` to the end of the raw utterance."""
    i = start
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in "'\"":
            i = _lex_quoted(text, i)
            continue
        if ch == ";":
            return i
        if ch == ")" and paren_depth > 0:
            return i
        if ch == "-" and text.startswith("--", i):
            return i
        if ch.isalpha():
            m = IDENT_RE.match(text, i)
            if m is None:  # non-ASCII letters are plain utterance content
                i += 1
                continue
            word = m.group(0)
            if word.upper() in UTTERANCE_TERMINATORS:
                return i
            i = m.end()
            continue
        i += 1
    return n


def tokenize(text: str) -> List[Token]:
    """Tokenize one statement (or a whole script; ';' becomes a SEMI token)."""
    tokens: List[Token] = []
    i = 0
    n = len(text)
    paren_depth = 0
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "-" and text.startswith("--", i):
            nl = text.find("\n", i)
            i = n if nl < 0 else nl + 1
            continue
        if ch in "'\"":
            end = _lex_quoted(text, i)
            tokens.append(Token("STRING", text[i + 1 : end - 1], i))
            i = end
            continue
        if ch in PUNCT:
            kind = PUNCT[ch]
            if kind == "LPAREN":
                paren_depth += 1
            elif kind == "RPAREN":
                paren_depth = max(0, paren_depth - 1)
            tokens.append(Token(kind, ch, i))
            i += 1
            continue
        m = IDENT_RE.match(text, i)
        if m is not None:
            word = m.group(0)
            upper = word.upper()
            if upper in KEYWORDS and "." not in word:
                tokens.append(Token(upper, word, i))
                i = m.end()
                if upper == "WHERE":
                    # capture the raw utterance
                    end = _utterance_end(text, i, paren_depth)
                    raw = text[i:end].strip()
                    tokens.append(Token("UTTERANCE", raw, i))
                    i = end
            else:
                tokens.append(Token("IDENT", word, i))
                i = m.end()
            continue
        raise LexError(
            f"unexpected character {ch!r} at byte offset {byte_offset(text, i)}",
            offset=byte_offset(text, i),
        )
    tokens.append(Token("EOF", "", n))
    return tokens
