"""Translation of WHERE utterances into native predicate dialects.

The deterministic pattern translator is the default and applies, in order:

1. quoted-literal extraction ('…' or "…");
2. comparison patterns — an n-gram that fuzzy-matches a column name
   (case-insensitive, underscore/space equivalent), an optional operator
   phrase (is / equals / = / after / before / greater than / …), and a typed
   value; a clause consumed by a comparison contributes nothing else;
3. connective splitting on top-level "and" / "or";
4. fallback — remaining content words (stopwords and generic nouns dropped)
   become a conjunctive keyword query in the keyword dialect, or
   contains-any filters over the table's text columns otherwise; a run of
   adjacent words containing a column name binds to that column instead.

Every step is recorded in a :class:`TranslationTrace`.  The same input
always yields the same output, and the deterministic translator reports
zero token usage and zero provider cost.  Remote (model-backed) translators
implement :class:`RemoteTranslator`; a recorded-response stub is provided
for tests so nothing here ever depends on a live model.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .catalog import TableSchema
from .errors import DialectError, TranslationError, UntranslatableError
from .predicates import (
    And,
    Comparison,
    Contains,
    ContainsAny,
    Expr,
    KeywordClause,
    KeywordQuery,
    KeywordTerm,
    Or,
    PredicateBody,
    body_from_json,
    body_to_json,
    render_body,
)

DIALECTS = ("boolean-expression", "keyword-query", "mail-filter", "fact-lookup")

DIALECT_FOR_WRAPPER = {
    "relational-fixture": "boolean-expression",
    "document-corpus": "keyword-query",
    "http-api": "keyword-query",
    "mailbox": "mail-filter",
    "knowledge-stub": "fact-lookup",
}

STOPWORDS = frozenset(
    """a an the is are am was were be been being do does did has have had having
    i me my we our you your he him his she her they them their it its this that
    these those there here which who whom whose what when how why whether if
    and or not no nor but so such very just only also too than then as of in at
    to for with by from into onto during while until since within without
    across along around through per all any each every some few more most other
    another own same both about""".split()
)

GENERIC_NOUNS = frozenset(
    """person people page pages document documents article articles record
    records entry entries item items thing things user users one ones message
    messages mail email emails individual individuals result results row rows
    info information data content contents list lists detail details thread
    threads associated related regarding concerning pertaining referring refer
    refers determine determines determined indicating indicates indicate
    mention mentions mentioned mentioning containing show shows shown find
    found get gets retrieve retrieved give given written work worked working
    held hold take takes taken took won win wins place places""".split()
)

_COPULAS = ("is", "are", "was", "were")

# operator phrases, longest first; matched after an optional copula
_OP_PHRASES: Tuple[Tuple[Tuple[str, ...], str], ...] = (
    (("greater", "than", "or", "equal", "to"), "ge"),
    (("less", "than", "or", "equal", "to"), "le"),
    (("not", "equal", "to"), "ne"),
    (("greater", "than"), "gt"),
    (("less", "than"), "lt"),
    (("equal", "to"), "eq"),
    (("at", "least"), "ge"),
    (("at", "most"), "le"),
    (("equals",), "eq"),
    (("after",), "gt"),
    (("before",), "lt"),
    (("over",), "gt"),
    (("under",), "lt"),
    (("above",), "gt"),
    (("below",), "lt"),
    (("contains",), "contains"),
    (("not",), "ne"),
    (("=",), "eq"),
    (("==",), "eq"),
    (("!=",), "ne"),
    ((">=",), "ge"),
    (("<=",), "le"),
    ((">",), "gt"),
    (("<",), "lt"),
)

_EMAIL_RE = re.compile(r"^[^\s@']+@[^\s@']+\.[^\s@']+$")
_NUMBER_RE = re.compile(r"^-?\d+(\.\d+)?$")
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


@dataclass(frozen=True)
class TranslationTrace:
    utterance: str
    matched_patterns: Tuple[str, ...]
    column_bindings: Tuple[Tuple[str, str], ...]
    residual_terms: Tuple[str, ...]
    translator: str  # "deterministic" or the remote model name
    tokens_in: int = 0
    tokens_out: int = 0
    provider_cost: float = 0.0

    def as_json(self) -> dict:
        return {
            "utterance": self.utterance,
            "matched_patterns": list(self.matched_patterns),
            "column_bindings": [list(b) for b in self.column_bindings],
            "residual_terms": list(self.residual_terms),
            "translator": self.translator,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "provider_cost": self.provider_cost,
        }


@dataclass(frozen=True)
class NativePredicate:
    dialect: str
    body: PredicateBody
    trace: TranslationTrace

    def render(self) -> str:
        return render_body(self.body)


# --- utterance tokens ---------------------------------------------------------


@dataclass(frozen=True)
class _Item:
    text: str
    quoted: bool = False


_SYMBOLS = ("!=", ">=", "<=", "==", "=", ">", "<")


def _tokenize_utterance(utterance: str) -> List[_Item]:
    items: List[_Item] = []
    i, n = 0, len(utterance)
    while i < n:
        ch = utterance[i]
        if ch.isspace() or ch in ",;:":
            i += 1
            continue
        if ch in "'\"":
            j = utterance.find(ch, i + 1)
            if j < 0:
                raise TranslationError(
                    f"unterminated quote in utterance at offset {i}", offset=i
                )
            items.append(_Item(utterance[i + 1 : j], quoted=True))
            i = j + 1
            continue
        matched = False
        for sym in _SYMBOLS:
            if utterance.startswith(sym, i):
                items.append(_Item(sym))
                i += len(sym)
                matched = True
                break
        if matched:
            continue
        j = i
        while j < n and not utterance[j].isspace() and utterance[j] not in "'\",;:":
            j += 1
        word = utterance[i:j].strip(".?!()")
        if word:
            items.append(_Item(word))
        i = j
    return items


def _norm(text: str) -> str:
    return " ".join(text.casefold().replace("_", " ").split())


class _ColumnMatcher:
    def __init__(self, schema: TableSchema):
        self.by_norm = {_norm(name): name for name in schema.column_names}

    def match(self, words: Sequence[str]) -> Optional[str]:
        return self.by_norm.get(_norm(" ".join(words)))


# --- the deterministic translator ---------------------------------------------


class _Steps:
    """Accumulates trace entries during one translation."""

    def __init__(self):
        self.patterns: List[str] = []
        self.bindings: List[Tuple[str, str]] = []
        self.residuals: List[str] = []


def _typed_value(raw: str, sem_type: str):
    """Parse a comparison value for a column type; None means 'not parseable'."""
    text = raw.strip()
    if sem_type == "integer":
        return int(text) if re.fullmatch(r"-?\d+", text) else None
    if sem_type == "real":
        return float(text) if _NUMBER_RE.fullmatch(text) else None
    if sem_type == "date":
        if _DATE_RE.fullmatch(text):
            try:
                return _dt.date.fromisoformat(text)
            except ValueError:
                return None
        return None
    if sem_type == "boolean":
        low = text.lower()
        if low in ("true", "yes"):
            return True
        if low in ("false", "no"):
            return False
        return None
    return text  # text columns take the raw string


_ARTICLES = ("a", "an", "the")


def _find_comparison(
    items: List[_Item], schema: TableSchema, matcher: _ColumnMatcher, steps: _Steps
) -> Optional[Expr]:
    """Scan one clause for `<column> <op> <value>`; consumes the whole clause."""
    n = len(items)
    for start in range(n):
        if items[start].quoted:
            continue
        for length in (3, 2, 1):
            end = start + length
            if end > n or any(it.quoted for it in items[start:end]):
                continue
            column = matcher.match([it.text for it in items[start:end]])
            if column is None:
                continue
            rest = items[end:]
            op, rest = _match_operator(rest)
            if op is None:
                # implicit equality only for unambiguous values
                if rest and (
                    rest[0].quoted
                    or _EMAIL_RE.fullmatch(rest[0].text)
                    or _NUMBER_RE.fullmatch(rest[0].text)
                    or _DATE_RE.fullmatch(rest[0].text)
                ):
                    op = "eq"
                else:
                    continue
            while rest and not rest[0].quoted and rest[0].text.lower() in _ARTICLES:
                rest = rest[1:]
            if not rest:
                continue
            if rest[0].quoted:
                raw = rest[0].text
                trailing = rest[1:]
            else:
                raw = " ".join(it.text for it in rest)
                trailing = []
            value = _typed_value(raw, schema.column_type(column))
            if value is None:
                continue
            if op == "contains":
                expr: Expr = Contains(column=column, needle=str(value))
                steps.patterns.append(f"comparison: {column} contains {value!r}")
            else:
                expr = Comparison(column=column, op=op, value=value)
                steps.patterns.append(f"comparison: {column} {op} {value!r}")
            steps.bindings.append((column, raw))
            steps.residuals.extend(
                it.text for it in items[:start] if not it.quoted
            )
            steps.residuals.extend(it.text for it in trailing)
            return expr
    return None


def _match_operator(items: List[_Item]) -> Tuple[Optional[str], List[_Item]]:
    rest = list(items)
    saw_copula = False
    if rest and not rest[0].quoted and rest[0].text.lower() in _COPULAS:
        saw_copula = True
        rest = rest[1:]
    words = [it.text.lower() if not it.quoted else None for it in rest]
    for phrase, op in _OP_PHRASES:
        k = len(phrase)
        if len(rest) >= k and tuple(words[:k]) == phrase:
            return op, rest[k:]
    if saw_copula:
        return "eq", rest
    return None, rest


def _content_runs(items: List[_Item], steps: _Steps) -> List[Tuple[str, bool]]:
    """Group surviving content words into adjacency runs; quoted items are runs."""
    runs: List[Tuple[str, bool]] = []
    current: List[str] = []

    def flush():
        if current:
            runs.append((" ".join(current), False))
            current.clear()

    for item in items:
        if item.quoted:
            flush()
            runs.append((item.text, True))
            continue
        low = item.text.lower()
        if low in STOPWORDS or low in GENERIC_NOUNS:
            steps.residuals.append(item.text)
            flush()
            continue
        if not any(ch.isalnum() for ch in item.text):
            flush()
            continue
        current.append(item.text)
    flush()
    return runs


def _split_top_level(items: List[_Item], word: str) -> List[List[_Item]]:
    parts: List[List[_Item]] = [[]]
    for item in items:
        if not item.quoted and item.text.lower() == word:
            parts.append([])
        else:
            parts[-1].append(item)
    return [p for p in parts if p]


def _mail_between(items: List[_Item], steps: _Steps) -> Tuple[Optional[Expr], List[_Item]]:
    """Recognize `between ADDR and ADDR` before connective splitting."""
    for i in range(len(items) - 3):
        window = items[i : i + 4]
        if any(it.quoted for it in window):
            continue
        a, b, c, d = (it.text for it in window)
        if (
            a.lower() == "between"
            and _EMAIL_RE.fullmatch(b)
            and c.lower() == "and"
            and _EMAIL_RE.fullmatch(d)
        ):
            expr = Or(
                children=(
                    And(children=(Comparison("from", "eq", b), Comparison("to", "eq", d))),
                    And(children=(Comparison("from", "eq", d), Comparison("to", "eq", b))),
                )
            )
            steps.patterns.append(f"mail pattern: between {b} and {d}")
            steps.bindings.extend([("from", b), ("to", d)])
            return expr, items[:i] + items[i + 4 :]
    return None, items


def _translate_expr_clause(
    items: List[_Item],
    schema: TableSchema,
    matcher: _ColumnMatcher,
    steps: _Steps,
) -> Optional[Expr]:
    comparison = _find_comparison(items, schema, matcher, steps)
    if comparison is not None:
        return comparison
    parts: List[Expr] = []
    text_cols = schema.text_columns()
    if any(it.quoted for it in items):
        # quotes say exactly what to match, same as the keyword dialect:
        # unquoted words become residuals so both dialects select alike
        for it in items:
            if not it.quoted:
                steps.residuals.append(it.text)
        for it in items:
            if not it.quoted:
                continue
            steps.patterns.append(f"quoted literal: {it.text!r}")
            if not text_cols:
                raise UntranslatableError(
                    f"no text columns on {schema.qualified_name!r} to match "
                    f"{it.text!r}"
                )
            parts.append(ContainsAny(columns=text_cols, needle=it.text))
        return parts[0] if len(parts) == 1 else And(children=tuple(parts))
    for phrase, quoted in _content_runs(items, steps):
        anchor = None
        if not quoted:
            for w in phrase.split():
                col = matcher.match([w])
                if col is not None:
                    anchor = col
        if anchor is not None:
            parts.append(Contains(column=anchor, needle=phrase))
            steps.patterns.append(f"column-anchor: {anchor} contains {phrase!r}")
            steps.bindings.append((anchor, phrase))
        else:
            if not text_cols:
                raise UntranslatableError(
                    f"no text columns on {schema.qualified_name!r} to match {phrase!r}"
                )
            # one contains-any per word, mirroring the keyword dialect's
            # conjunctive word terms so both translations select alike
            for word in phrase.split():
                parts.append(ContainsAny(columns=text_cols, needle=word))
            steps.patterns.append(
                "fallback: contains-any [" + ", ".join(phrase.split()) + "]"
            )
    if not parts:
        return None
    return parts[0] if len(parts) == 1 else And(children=tuple(parts))


def _translate_keyword_clause(items: List[_Item], steps: _Steps) -> Optional[KeywordClause]:
    quoted = [it for it in items if it.quoted]
    if quoted:
        # quotes say exactly what to search; unquoted words become residuals
        for it in items:
            if not it.quoted:
                steps.residuals.append(it.text)
        for it in quoted:
            steps.patterns.append(f"quoted literal: {it.text!r}")
        return KeywordClause(
            terms=tuple(KeywordTerm(it.text, phrase=True) for it in quoted)
        )
    words: List[str] = []
    for phrase, is_quoted in _content_runs(items, steps):
        words.extend(phrase.split())
    if not words:
        return None
    steps.patterns.append("fallback: keyword conjunction [" + ", ".join(words) + "]")
    return KeywordClause(terms=tuple(KeywordTerm(w.lower()) for w in words))


class DeterministicTranslator:
    """The built-in, zero-cost pattern translator."""

    identity = "deterministic"

    def translate(self, utterance: str, schema: TableSchema, dialect: str) -> NativePredicate:
        if dialect not in DIALECTS:
            raise TranslationError(f"unknown dialect {dialect!r}")
        if not utterance or not utterance.strip():
            raise TranslationError("empty utterance")
        items = _tokenize_utterance(utterance)
        steps = _Steps()
        matcher = _ColumnMatcher(schema)

        if dialect == "keyword-query":
            # comparisons are not expressible as keyword queries
            probe = _Steps()
            for group in _split_top_level(items, "or"):
                for clause in _split_top_level(group, "and"):
                    if _find_comparison(clause, schema, matcher, probe) is not None:
                        raise DialectError(
                            "keyword-query dialect cannot express comparison: "
                            + probe.patterns[-1]
                        )
            clauses: List[KeywordClause] = []
            for group in _split_top_level(items, "or"):
                clause = _translate_keyword_clause(group, steps)
                if clause is not None:
                    clauses.append(clause)
            if not clauses:
                raise UntranslatableError(
                    f"no translatable content in utterance {utterance!r}"
                )
            body: PredicateBody = KeywordQuery(clauses=tuple(clauses))
            return self._wrap(utterance, dialect, body, steps)

        prelude: List[Expr] = []
        if dialect == "mail-filter":
            pattern, items = _mail_between(items, steps)
            if pattern is not None:
                prelude.append(pattern)

        or_parts: List[Expr] = []
        for group in _split_top_level(items, "or"):
            and_parts: List[Expr] = []
            for clause in _split_top_level(group, "and"):
                part = _translate_expr_clause(clause, schema, matcher, steps)
                if part is not None:
                    and_parts.append(part)
            if and_parts:
                or_parts.append(
                    and_parts[0] if len(and_parts) == 1 else And(children=tuple(and_parts))
                )
        if or_parts:
            prelude.append(or_parts[0] if len(or_parts) == 1 else Or(children=tuple(or_parts)))
        if not prelude:
            raise UntranslatableError(
                f"no translatable content in utterance {utterance!r}"
            )
        body = prelude[0] if len(prelude) == 1 else And(children=tuple(prelude))
        return self._wrap(utterance, dialect, body, steps)

    def _wrap(self, utterance: str, dialect: str, body: PredicateBody, steps: _Steps) -> NativePredicate:
        trace = TranslationTrace(
            utterance=utterance,
            matched_patterns=tuple(steps.patterns),
            column_bindings=tuple(steps.bindings),
            residual_terms=tuple(steps.residuals),
            translator=self.identity,
            tokens_in=0,
            tokens_out=0,
            provider_cost=0.0,
        )
        return NativePredicate(dialect=dialect, body=body, trace=trace)


def explain_translation(trace: TranslationTrace) -> str:
    """Human-readable, deterministic report of one translation."""
    lines = [f"utterance: {trace.utterance}"]
    lines.append(f"translator: {trace.translator}")
    if trace.matched_patterns:
        lines.append("patterns:")
        lines.extend(f"  - {p}" for p in trace.matched_patterns)
    else:
        lines.append("patterns: none")
    if trace.column_bindings:
        lines.append("column bindings:")
        lines.extend(f"  - {col} <- {text!r}" for col, text in trace.column_bindings)
    if trace.residual_terms:
        lines.append("residual terms: " + ", ".join(trace.residual_terms))
    if trace.translator != "deterministic":
        lines.append(
            f"tokens: in={trace.tokens_in} out={trace.tokens_out} "
            f"cost=${trace.provider_cost:.6f}"
        )
    return "\n".join(lines)


# --- remote translators ---------------------------------------------------------


def request_hash(utterance: str, columns: Sequence[Tuple[str, str]], dialect: str) -> str:
    payload = json.dumps(
        {"utterance": utterance, "columns": [list(c) for c in columns], "dialect": dialect},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class RemoteTranslator:
    """Model-backed translator contract.

    Subclasses implement `_call(request) -> response dict` with keys
    body (predicate JSON), token_in, token_out, cost.
    """

    identity = "remote"

    def translate(self, utterance: str, schema: TableSchema, dialect: str) -> NativePredicate:
        if not utterance or not utterance.strip():
            raise TranslationError("empty utterance")
        request = {
            "utterance": utterance,
            "columns": [list(c) for c in schema.columns],
            "dialect": dialect,
        }
        response = self._call(request)
        body = body_from_json(response["body"])
        trace = TranslationTrace(
            utterance=utterance,
            matched_patterns=(f"remote translation via {self.identity}",),
            column_bindings=(),
            residual_terms=(),
            translator=self.identity,
            tokens_in=int(response["token_in"]),
            tokens_out=int(response["token_out"]),
            provider_cost=float(response["cost"]),
        )
        return NativePredicate(dialect=dialect, body=body, trace=trace)

    def _call(self, request: dict) -> dict:
        raise NotImplementedError


class RecordedTranslator(RemoteTranslator):
    """Replays recorded responses keyed by request hash (ndjson file)."""

    def __init__(self, path: str | Path, identity: str = "recorded-model"):
        self.identity = identity
        self._responses: Dict[str, dict] = {}
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            self._responses[obj["request_hash"]] = obj["response"]

    def _call(self, request: dict) -> dict:
        key = request_hash(
            request["utterance"],
            [tuple(c) for c in request["columns"]],
            request["dialect"],
        )
        if key not in self._responses:
            raise TranslationError(
                f"no recorded response for request hash {key[:12]}…"
            )
        return self._responses[key]
