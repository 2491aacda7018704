"""Token/cost accounting flows from translator traces into statement metrics."""

import json

from rubicon.engine import Engine
from rubicon.predicates import Comparison, body_to_json
from rubicon.translator import RecordedTranslator, request_hash


def test_remote_translator_tokens_reach_metrics(mini_catalog, tmp_path):
    staff_columns = [
        ["full_name", "text"], ["title", "text"], ["lab", "text"], ["age", "integer"],
    ]
    key = request_hash("title is Professor", staff_columns, "boolean-expression")
    stub = tmp_path / "responses.ndjson"
    stub.write_text(json.dumps({
        "request_hash": key,
        "response": {
            "body": body_to_json(Comparison("title", "eq", "Professor")),
            "token_in": 250,
            "token_out": 40,
            "cost": 0.0011,
        },
    }) + "\n")
    engine = Engine(mini_catalog, translator=RecordedTranslator(stub, identity="stub-model"))
    session = engine.new_session()
    table, metrics = session.run_interactive(
        "FIND full_name FROM staff WHERE title is Professor"
    )
    assert [r[0] for r in table.rows] == ["Ada Byron", "Carl Gauss"]
    assert metrics.tokens_in == 250
    assert metrics.tokens_out == 40
    assert metrics.provider_cost == 0.0011
    assert metrics.tool_calls == 1
