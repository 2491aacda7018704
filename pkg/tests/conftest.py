import json
from pathlib import Path

import pytest

from rubicon.catalog import Catalog, SourceDescriptor, TableSchema, load_catalog_file
from rubicon.engine import Engine

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_path() -> Path:
    assert FIXTURES.exists(), "run scripts/make_fixtures.py first"
    return FIXTURES


@pytest.fixture()
def catalog(fixtures_path) -> Catalog:
    return load_catalog_file(fixtures_path / "catalog.json")


@pytest.fixture()
def engine(catalog) -> Engine:
    return Engine(catalog)


@pytest.fixture()
def session(engine):
    return engine.new_session(principal="me@example.org")


def inline_source(name, kind, tables):
    """Build a SourceDescriptor from {table: (columns, rows)} dicts."""
    schemas = []
    data = {}
    for tname, (columns, rows) in tables.items():
        schemas.append(
            TableSchema(
                qualified_name=f"{name}.{tname}",
                source=name,
                name=tname,
                columns=tuple(columns),
                row_estimate=len(rows),
            )
        )
        data[tname] = rows
    return SourceDescriptor(
        name=name,
        wrapper_kind=kind,
        connection={"data": data},
        tables=tuple(schemas),
    )


@pytest.fixture()
def mini_catalog():
    """A small two-source catalog used by unit tests."""
    cat = Catalog()
    cat.register_source(
        inline_source(
            "DW",
            "relational-fixture",
            {
                "staff": (
                    [("full_name", "text"), ("title", "text"), ("lab", "text"),
                     ("age", "integer")],
                    [
                        {"full_name": "Ada Byron", "title": "Professor",
                         "lab": "Systems Research Lab", "age": 44},
                        {"full_name": "Carl Gauss", "title": "Professor",
                         "lab": "Number Theory Lab", "age": 51},
                        {"full_name": "Emmy Noether", "title": "Lecturer",
                         "lab": "Systems Research Lab", "age": 39},
                    ],
                ),
                "desks": (
                    [("full_name", "text"), ("desk", "text")],
                    [
                        {"full_name": "Ada Byron", "desk": "D-1"},
                        {"full_name": "Emmy Noether", "desk": "D-2"},
                    ],
                ),
            },
        )
    )
    cat.register_source(
        inline_source(
            "NOTES",
            "document-corpus",
            {
                "memos": (
                    [("title", "text"), ("text", "text")],
                    [
                        {"title": "Ada Byron", "text": "Ada Byron won the Turing Award."},
                        {"title": "Plans", "text": "quarterly roadmap and planning memo"},
                        {"title": "Carl Gauss", "text": "Carl Gauss studies number theory."},
                    ],
                ),
            },
        )
    )
    return cat


@pytest.fixture()
def mini_engine(mini_catalog):
    return Engine(mini_catalog)
