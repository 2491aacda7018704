"""Seeded random generators shared by the property-style tests."""

from __future__ import annotations

import random
import string
from typing import List, Optional, Tuple

from rubicon.aql.ast import (
    AggregateProj,
    ColumnProj,
    DeleteStatement,
    EntityMatch,
    ExplicitPairs,
    FindQuery,
    JoinLink,
    NaturalByName,
    OutputStatement,
    SaveStatement,
    SchemaQuery,
    StarProj,
    Statement,
)
from rubicon.catalog import SourceDescriptor, TableSchema
from rubicon.predicates import (
    And,
    Comparison,
    Contains,
    ContainsAny,
    Expr,
    Not,
    Or,
    TruePredicate,
)

SAFE_WORDS = [
    "alpha", "beta", "gamma", "delta", "sigma", "lambda", "vector", "tensor",
    "quarterly", "roadmap", "archive", "ledger", "harbor", "granite", "willow",
    "falcon", "ember", "quartz", "meadow", "spruce",
]
# words an utterance may contain without terminating the capture: no bare
# "on"/"join", no semicolons or parens, quotes balanced
UTTERANCE_WORDS = SAFE_WORDS + ["is", "after", "the", "a", "and", "or", "contains"]


def ident(rng: random.Random, dotted: bool = False) -> str:
    def part():
        return rng.choice(string.ascii_lowercase) + "".join(
            rng.choice(string.ascii_lowercase + string.digits + "_")
            for _ in range(rng.randint(0, 6))
        )

    if dotted and rng.random() < 0.4:
        return f"{part()}.{part()}"
    return part()


def utterance(rng: random.Random) -> str:
    n = rng.randint(1, 6)
    words = [rng.choice(UTTERANCE_WORDS) for _ in range(n)]
    if rng.random() < 0.4:
        words.append("'" + " ".join(rng.choice(SAFE_WORDS) for _ in range(2)) + "'")
    return " ".join(words)


def projection(rng: random.Random):
    return ColumnProj(name=ident(rng))


def find_block(rng: random.Random, allow_agg: bool) -> FindQuery:
    style = rng.random()
    if style < 0.15:
        projections: tuple = (StarProj(),)
    elif allow_agg and style < 0.3:
        fn = rng.choice(["COUNT", "SUM", "AVG", "MIN", "MAX"])
        col = None if (fn == "COUNT" and rng.random() < 0.3) else ident(rng)
        projections = tuple(
            AggregateProj(function=fn, column=col)
            for _ in range(1)
        )
    else:
        projections = tuple(projection(rng) for _ in range(rng.randint(1, 4)))
    return FindQuery(
        projections=projections,
        source=ident(rng, dotted=True),
        predicate=utterance(rng) if rng.random() < 0.7 else None,
    )


def join_condition(rng: random.Random):
    roll = rng.random()
    if roll < 0.4:
        return NaturalByName()
    if roll < 0.7:
        return EntityMatch(left=ident(rng), right=ident(rng))
    pairs = tuple(
        (ident(rng), ident(rng)) for _ in range(rng.randint(1, 3))
    )
    return ExplicitPairs(pairs=pairs)


def find_query(rng: random.Random) -> FindQuery:
    blocks = [find_block(rng, allow_agg=True)]
    for _ in range(rng.randint(0, 2)):
        blocks.append(find_block(rng, allow_agg=False))
    conds = [join_condition(rng) for _ in range(len(blocks) - 1)]
    query = blocks[-1]
    for block, cond in zip(reversed(blocks[:-1]), reversed(conds)):
        query = FindQuery(
            projections=block.projections,
            source=block.source,
            predicate=block.predicate,
            join=JoinLink(right=query, condition=cond),
        )
    return query


def statement(rng: random.Random) -> Statement:
    roll = rng.random()
    if roll < 0.1:
        target = None
        if rng.random() < 0.7:
            target = ident(rng, dotted=True)
        return SchemaQuery(target=target)
    if roll < 0.2:
        query = find_query(rng)
        name = ident(rng)
        while name in query.from_tables():
            name = ident(rng)
        return SaveStatement(query=query, new_table=name)
    if roll < 0.28:
        dest = None
        if rng.random() < 0.5:
            dest = "out/" + ident(rng) + ".tbl"
        return OutputStatement(table=ident(rng), destination=dest)
    if roll < 0.34:
        return DeleteStatement(table=ident(rng))
    return find_query(rng)


# --- random tables + predicates for wrapper property tests -----------------------


def random_table(rng: random.Random, source: str, name: str) -> Tuple[TableSchema, List[dict]]:
    n_cols = rng.randint(2, 5)
    columns: List[Tuple[str, str]] = []
    for i in range(n_cols):
        sem = rng.choice(["text", "integer", "real", "date", "boolean", "text"])
        columns.append((f"c{i}_{rng.choice(SAFE_WORDS)}", sem))
    rows = []
    for _ in range(rng.randint(0, 30)):
        rec = {}
        for col, sem in columns:
            if rng.random() < 0.12:
                continue  # null via absence
            if sem == "text":
                rec[col] = " ".join(
                    rng.choice(SAFE_WORDS) for _ in range(rng.randint(1, 4))
                )
            elif sem == "integer":
                rec[col] = rng.randint(-50, 50)
            elif sem == "real":
                rec[col] = round(rng.uniform(-5, 5), 3)
            elif sem == "date":
                rec[col] = f"20{rng.randint(10, 30)}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"
            else:
                rec[col] = rng.random() < 0.5
        rows.append(rec)
    schema = TableSchema(
        qualified_name=f"{source}.{name}",
        source=source,
        name=name,
        columns=tuple(columns),
        row_estimate=len(rows),
    )
    return schema, rows


def random_expr(rng: random.Random, schema: TableSchema, depth: int = 0) -> Expr:
    text_cols = schema.text_columns()
    choices = ["cmp", "contains", "true"]
    if depth < 2:
        choices += ["and", "or", "not"]
    if text_cols:
        choices.append("contains_any")
    kind = rng.choice(choices)
    if kind == "cmp":
        col, sem = rng.choice(list(schema.columns))
        op = rng.choice(["eq", "ne", "lt", "le", "gt", "ge"])
        if sem == "text":
            value = rng.choice(SAFE_WORDS)
        elif sem == "integer":
            value = rng.randint(-50, 50)
        elif sem == "real":
            value = round(rng.uniform(-5, 5), 3)
        elif sem == "date":
            import datetime

            value = datetime.date(2020, rng.randint(1, 12), rng.randint(1, 28))
        else:
            value = rng.random() < 0.5
        return Comparison(column=col, op=op, value=value)
    if kind == "contains":
        col = rng.choice([c for c, _ in schema.columns])
        return Contains(column=col, needle=rng.choice(SAFE_WORDS))
    if kind == "contains_any":
        return ContainsAny(columns=text_cols, needle=rng.choice(SAFE_WORDS))
    if kind == "and":
        return And(children=tuple(random_expr(rng, schema, depth + 1) for _ in range(2)))
    if kind == "or":
        return Or(children=tuple(random_expr(rng, schema, depth + 1) for _ in range(2)))
    if kind == "not":
        return Not(child=random_expr(rng, schema, depth + 1))
    return TruePredicate()
