import random

import pytest

from rubicon.aql import parse_statement, render_statement
from rubicon.aql.ast import (
    AggregateProj,
    ColumnProj,
    FindQuery,
    SchemaQuery,
    StarProj,
)
from rubicon.errors import EngineError

from .genutil import statement

AWARD_FIRST = """FIND laureate_full_name, award_name
FROM WIKIPEDIA
WHERE people associated with 'Turing Award' or 'Nobel Prize'
JOIN
FIND full_name
FROM UNIVERSITY_DW.faculty
WHERE the person is a professor in the research lab"""


def test_schema_query_renders_bare():
    assert render_statement(SchemaQuery(target=None)) == "?"


def test_render_uppercases_keywords_and_keeps_utterance():
    stmt = parse_statement("find COUNT(name) from buildings where has a page")
    text = render_statement(stmt)
    assert text == "FIND COUNT(name)\nFROM buildings\nWHERE has a page"


def test_award_first_roundtrip():
    stmt = parse_statement(AWARD_FIRST)
    assert parse_statement(render_statement(parse_statement(render_statement(stmt)))) == stmt


def test_roundtrip_generated_statements():
    rng = random.Random(1234)
    for i in range(1000):
        stmt = statement(rng)
        rendered = render_statement(stmt)
        reparsed = parse_statement(rendered)
        assert reparsed == stmt, f"case {i}: {rendered!r}"


def test_every_grammar_production_accepted():
    accepted = [
        "FIND full_name FROM faculty WHERE the person is a professor",  # basic
        "FIND COUNT(name) FROM buildings WHERE campus sites",  # aggregate
        "FIND a FROM t WHERE alpha JOIN FIND b FROM u WHERE beta",  # two-block join
        "?",  # all sources
        "? UNIVERSITY_DW",  # one source
        "? WIKIPEDIA.Page",  # one table
        "SAVE (FIND a FROM t) AS kept",  # save
        "OUTPUT kept",  # output
        "DELETE kept",  # delete
    ]
    for text in accepted:
        stmt = parse_statement(text)
        assert parse_statement(render_statement(stmt)) == stmt


def test_fuzz_never_raises_foreign_exceptions():
    rng = random.Random(99)
    pieces = [
        "FIND", "FROM", "WHERE", "JOIN", "SAVE", "AS", "OUTPUT", "DELETE", "?",
        "(", ")", ",", ";", "*", "=", "'", '"', "a", "tbl", "x.y", " ", "\n",
        "\x00", "é", "🜁",
    ]
    for i in range(20000):
        n = rng.randint(0, 12)
        text = "".join(rng.choice(pieces) for _ in range(n))
        try:
            parse_statement(text)
        except EngineError:
            pass  # positioned parse/lex errors are the contract
