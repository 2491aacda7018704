"""AQL: the find/from/where statement language.

Statements are parsed into plain dataclass trees (`ast`), rendered back into
canonical text (`render`), and never resolved against a catalog here; name
resolution happens at plan build time.
"""

from .ast import (
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
from .parser import parse_script, parse_statement
from .render import render_script, render_statement
from .tokens import Token, tokenize

__all__ = [
    "AggregateProj",
    "ColumnProj",
    "DeleteStatement",
    "EntityMatch",
    "ExplicitPairs",
    "FindQuery",
    "JoinLink",
    "NaturalByName",
    "OutputStatement",
    "SaveStatement",
    "SchemaQuery",
    "StarProj",
    "Statement",
    "Token",
    "tokenize",
    "parse_statement",
    "parse_script",
    "render_statement",
    "render_script",
]
