import pytest

from rubicon.aql import (
    AggregateProj,
    ColumnProj,
    DeleteStatement,
    EntityMatch,
    ExplicitPairs,
    FindQuery,
    NaturalByName,
    OutputStatement,
    SaveStatement,
    SchemaQuery,
    StarProj,
    parse_script,
    parse_statement,
)
from rubicon.errors import ParseError

AWARD_FIRST = """FIND laureate_full_name, award_name
FROM WIKIPEDIA
WHERE people associated with 'Turing Award' or 'Nobel Prize'
    JOIN
FIND full_name
FROM UNIVERSITY_DW.faculty
WHERE the person is a professor in the research lab"""


class TestFindQueries:
    def test_award_first_text_parses(self):
        stmt = parse_statement(AWARD_FIRST)
        assert isinstance(stmt, FindQuery)
        assert stmt.projections == (
            ColumnProj("laureate_full_name"),
            ColumnProj("award_name"),
        )
        assert stmt.source == "WIKIPEDIA"
        assert stmt.predicate == "people associated with 'Turing Award' or 'Nobel Prize'"
        assert stmt.join is not None
        right = stmt.join.right
        assert right.source == "UNIVERSITY_DW.faculty"
        assert right.predicate == "the person is a professor in the research lab"
        assert stmt.join.condition == NaturalByName()

    def test_where_is_optional(self):
        stmt = parse_statement("FIND a FROM t")
        assert stmt.predicate is None

    def test_star_projection(self):
        stmt = parse_statement("FIND * FROM t")
        assert stmt.projections == (StarProj(),)

    def test_star_must_be_alone(self):
        with pytest.raises(ParseError):
            parse_statement("FIND *, a FROM t")

    def test_aggregate_projection(self):
        stmt = parse_statement("FIND COUNT(name) FROM buildings WHERE has a page")
        assert stmt.projections == (AggregateProj("COUNT", "name"),)

    def test_count_star(self):
        stmt = parse_statement("FIND COUNT(*) FROM t")
        assert stmt.projections == (AggregateProj("COUNT", None),)

    def test_aggregates_and_columns_do_not_mix(self):
        with pytest.raises(ParseError):
            parse_statement("FIND COUNT(a), b FROM t")

    def test_unknown_aggregate_rejected(self):
        with pytest.raises(ParseError):
            parse_statement("FIND MEDIAN(a) FROM t")

    def test_aggregate_only_in_first_block(self):
        with pytest.raises(ParseError):
            parse_statement("FIND a FROM t JOIN FIND COUNT(b) FROM u")

    def test_join_requires_find(self):
        with pytest.raises(ParseError) as err:
            parse_statement("FIND x FROM t JOIN")
        assert "expected FIND after JOIN" in err.value.message

    def test_missing_from(self):
        with pytest.raises(ParseError):
            parse_statement("FIND a WHERE x")

    def test_empty_projection_list(self):
        with pytest.raises(ParseError):
            parse_statement("FIND FROM t WHERE x")

    def test_three_block_chain_is_left_deep(self):
        stmt = parse_statement(
            "FIND a FROM t JOIN FIND b FROM u ON a = b JOIN FIND c FROM v ON b = c"
        )
        blocks, conds = stmt.chain()
        assert [b.source for b in blocks] == ["t", "u", "v"]
        assert conds == [ExplicitPairs((("a", "b"),)), ExplicitPairs((("b", "c"),))]

    def test_entity_condition(self):
        stmt = parse_statement("FIND a FROM t JOIN FIND b FROM u ON ENTITY a = b")
        assert stmt.join.condition == EntityMatch("a", "b")

    def test_multi_pair_condition(self):
        stmt = parse_statement("FIND a FROM t JOIN FIND b FROM u ON a = b, c = d")
        assert stmt.join.condition == ExplicitPairs((("a", "b"), ("c", "d")))

    def test_keyword_column_names_allowed(self):
        stmt = parse_statement("FIND from, to FROM EMAIL.Message")
        assert stmt.projections == (ColumnProj("from"), ColumnProj("to"))

    def test_keyword_column_in_on_pair(self):
        stmt = parse_statement(
            "FIND name FROM n JOIN FIND subject FROM m ON sender_address = from"
        )
        assert stmt.join.condition == ExplicitPairs((("sender_address", "from"),))

    def test_empty_where_utterance_rejected(self):
        with pytest.raises(ParseError):
            parse_statement("FIND a FROM t WHERE ;")


class TestSchemaQueries:
    def test_bare(self):
        assert parse_statement("?") == SchemaQuery(target=None)

    def test_source(self):
        assert parse_statement("? UNIVERSITY_DW") == SchemaQuery(target="UNIVERSITY_DW")

    def test_table(self):
        assert parse_statement("? WIKIPEDIA.Page") == SchemaQuery(target="WIKIPEDIA.Page")


class TestHousekeeping:
    def test_save(self):
        stmt = parse_statement("SAVE (FIND a FROM t) AS result")
        assert isinstance(stmt, SaveStatement)
        assert stmt.new_table == "result"
        assert stmt.query.source == "t"

    def test_save_requires_as(self):
        with pytest.raises(ParseError):
            parse_statement("SAVE (FIND a FROM t) result")

    def test_save_target_distinct_from_sources(self):
        with pytest.raises(ParseError) as err:
            parse_statement("SAVE (FIND a FROM t) AS t")
        assert "collides" in err.value.message

    def test_save_target_unqualified(self):
        with pytest.raises(ParseError):
            parse_statement("SAVE (FIND a FROM t) AS x.y")

    def test_output_default_destination(self):
        assert parse_statement("OUTPUT t") == OutputStatement(table="t", destination=None)

    def test_output_to_path(self):
        stmt = parse_statement("OUTPUT t TO 'out/result.tbl'")
        assert stmt == OutputStatement(table="t", destination="out/result.tbl")

    def test_delete(self):
        assert parse_statement("DELETE _r1") == DeleteStatement(table="_r1")


class TestScripts:
    def test_semicolon_separated(self):
        stmts = parse_script("FIND a FROM t;\n-- comment\nFIND b FROM u;")
        assert len(stmts) == 2

    def test_trailing_semicolon_optional(self):
        assert len(parse_script("FIND a FROM t")) == 1

    def test_statements_must_be_separated(self):
        with pytest.raises(ParseError):
            parse_script("FIND a FROM t FIND b FROM u")

    def test_empty_script(self):
        assert parse_script("-- nothing here\n") == []

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_statement("FIND a FROM t extra")
