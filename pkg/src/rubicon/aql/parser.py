"""Recursive-descent parser for AQL statements.

The parser is purely syntactic: unknown table and column names are accepted
here and rejected later during plan build, when resolution against the
catalog happens.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from ..errors import ParseError
from .tokens import KEYWORDS
from .ast import (
    AGGREGATE_FUNCTIONS,
    AggregateProj,
    ColumnProj,
    DeleteStatement,
    EntityMatch,
    ExplicitPairs,
    FindQuery,
    JoinCondition,
    JoinLink,
    NaturalByName,
    OutputStatement,
    Projection,
    SaveStatement,
    SchemaQuery,
    StarProj,
    Statement,
    StarProj,
)
from .tokens import Token, tokenize


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    # --- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def accept(self, kind: str) -> Optional[Token]:
        if self.at(kind):
            return self.advance()
        return None

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {what}, found {tok.text or 'end of input'!r}",
                offset=tok.offset,
            )
        return self.advance()

    def fail(self, message: str) -> ParseError:
        return ParseError(message, offset=self.peek().offset)

    def column_name(self, what: str) -> Token:
        """Column positions also accept keyword-shaped names (e.g. the
        mailbox view's `from` and `to` columns); tables never do."""
        tok = self.peek()
        if tok.kind == "IDENT" or tok.kind in KEYWORDS:
            return self.advance()
        raise ParseError(
            f"expected {what}, found {tok.text or 'end of input'!r}",
            offset=tok.offset,
        )

    # --- grammar -------------------------------------------------------------

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.kind == "QMARK":
            return self.schema_query()
        if tok.kind == "FIND":
            return self.find_query()
        if tok.kind == "SAVE":
            return self.save_statement()
        if tok.kind == "OUTPUT":
            return self.output_statement()
        if tok.kind == "DELETE":
            return self.delete_statement()
        raise self.fail(
            f"expected a statement (FIND, SAVE, OUTPUT, DELETE or ?), found "
            f"{tok.text or 'end of input'!r}"
        )

    def schema_query(self) -> SchemaQuery:
        self.expect("QMARK", "'?'")
        ident = self.accept("IDENT")
        return SchemaQuery(target=ident.text if ident else None)

    def find_query(self) -> FindQuery:
        chain: List[FindQuery] = [self.find_block(allow_aggregates=True)]
        conds: List[JoinCondition] = []
        while self.accept("JOIN"):
            if not self.at("FIND"):
                raise self.fail("expected FIND after JOIN")
            chain.append(self.find_block(allow_aggregates=False))
            conds.append(self.join_condition())
        return _fold_chain(chain, conds)

    def find_block(self, allow_aggregates: bool) -> FindQuery:
        self.expect("FIND", "FIND")
        projections = self.projection_list(allow_aggregates)
        self.expect("FROM", "FROM clause")
        source = self.expect("IDENT", "table name after FROM").text
        predicate: Optional[str] = None
        if self.accept("WHERE"):
            utt = self.expect("UTTERANCE", "predicate text after WHERE")
            if not utt.text.strip():
                raise ParseError("empty WHERE utterance", offset=utt.offset)
            predicate = utt.text
        return FindQuery(projections=tuple(projections), source=source, predicate=predicate)

    def projection_list(self, allow_aggregates: bool) -> List[Projection]:
        projections = [self.projection(allow_aggregates)]
        while self.accept("COMMA"):
            projections.append(self.projection(allow_aggregates))
        kinds = {type(p) for p in projections}
        if StarProj in kinds and len(projections) > 1:
            raise self.fail("'*' must be the only projection")
        if AggregateProj in kinds and ColumnProj in kinds:
            raise self.fail("aggregate and plain projections cannot be mixed")
        return projections

    def projection(self, allow_aggregates: bool) -> Projection:
        if self.accept("STAR"):
            return StarProj()
        tok = self.column_name("projection (column, '*' or aggregate)")
        if self.at("LPAREN"):
            func = tok.text.upper()
            if func not in AGGREGATE_FUNCTIONS:
                raise ParseError(
                    f"unknown aggregate function {tok.text!r} "
                    f"(expected one of {', '.join(AGGREGATE_FUNCTIONS)})",
                    offset=tok.offset,
                )
            if not allow_aggregates:
                raise ParseError(
                    "aggregates are only allowed in the first FIND block",
                    offset=tok.offset,
                )
            self.advance()  # LPAREN
            if self.accept("STAR"):
                column: Optional[str] = None
            else:
                column = self.column_name("column inside aggregate").text
            self.expect("RPAREN", "')' closing aggregate")
            return AggregateProj(function=func, column=column)
        return ColumnProj(name=tok.text)

    def join_condition(self) -> JoinCondition:
        if not self.accept("ON"):
            return NaturalByName()
        # `ON ENTITY left = right` or `ON l1 = r1 [, l2 = r2 ...]`
        first = self.column_name("column name (or ENTITY) after ON")
        if first.text.upper() == "ENTITY":
            left = self.column_name("left column after ON ENTITY").text
            self.expect("EQ", "'=' in entity join condition")
            right = self.column_name("right column after '='").text
            return EntityMatch(left=left, right=right)
        pairs = [self._pair_rest(first.text)]
        while self.accept("COMMA"):
            left = self.column_name("left column in join pair").text
            pairs.append(self._pair_rest(left))
        return ExplicitPairs(pairs=tuple(pairs))

    def _pair_rest(self, left: str) -> Tuple[str, str]:
        self.expect("EQ", "'=' in join condition")
        right = self.column_name("right column in join pair").text
        return (left, right)

    def save_statement(self) -> SaveStatement:
        self.expect("SAVE", "SAVE")
        self.expect("LPAREN", "'(' after SAVE")
        query = self.find_query()
        self.expect("RPAREN", "')' closing SAVE query")
        self.expect("AS", "AS after SAVE (<query>)")
        name = self.expect("IDENT", "new table name after AS").text
        if "." in name:
            raise self.fail("SAVE target must be an unqualified identifier")
        if name in query.from_tables():
            raise self.fail(
                f"SAVE target {name!r} collides with a FROM table of its query"
            )
        return SaveStatement(query=query, new_table=name)

    def output_statement(self) -> OutputStatement:
        self.expect("OUTPUT", "OUTPUT")
        table = self.expect("IDENT", "table name after OUTPUT").text
        destination: Optional[str] = None
        nxt = self.peek()
        if nxt.kind == "IDENT" and nxt.text.upper() == "TO":
            self.advance()
            destination = self.expect("STRING", "quoted path after TO").text
        return OutputStatement(table=table, destination=destination)

    def delete_statement(self) -> DeleteStatement:
        self.expect("DELETE", "DELETE")
        table = self.expect("IDENT", "table name after DELETE").text
        return DeleteStatement(table=table)


def _fold_chain(chain: List[FindQuery], conds: List[JoinCondition]) -> FindQuery:
    """Link blocks [A, B, C] with conditions [c1, c2] into A.join=(B.join=(C))."""
    query = chain[-1]
    for block, cond in zip(reversed(chain[:-1]), reversed(conds)):
        query = FindQuery(
            projections=block.projections,
            source=block.source,
            predicate=block.predicate,
            join=JoinLink(right=query, condition=cond),
        )
    return query


def parse_statement(text: str) -> Statement:
    """Parse exactly one statement; trailing ';' is permitted."""
    tokens = tokenize(text)
    parser = _Parser(tokens)
    stmt = parser.statement()
    parser.accept("SEMI")
    eof = parser.peek()
    if eof.kind != "EOF":
        raise ParseError(
            f"unexpected trailing input {eof.text!r}", offset=eof.offset
        )
    return stmt


def parse_script(text: str) -> List[Statement]:
    """Parse a ';'-separated script (`--` comments already handled by the lexer)."""
    tokens = tokenize(text)
    parser = _Parser(tokens)
    statements: List[Statement] = []
    while parser.accept("SEMI"):
        pass
    while not parser.at("EOF"):
        statements.append(parser.statement())
        if not parser.at("EOF"):
            parser.expect("SEMI", "';' between statements")
            while parser.accept("SEMI"):
                pass
    return statements
