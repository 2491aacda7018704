#!/usr/bin/env python3
"""Record real server responses into frontend/fixtures/ for contract tests.

Runs the engine in-process via the FastAPI test client, so recorded
payloads are exactly what the HTTP layer serves.

Usage: python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from rubicon.catalog import load_catalog_file
from rubicon.engine import Engine
from rubicon.server import create_app

ROOT = Path(__file__).resolve().parent.parent.parent
OUT = Path(__file__).resolve().parent.parent / "fixtures"

Q3 = (
    "FIND title, categories FROM WIKIPEDIA "
    "WHERE people associated with 'Turing Award' or 'Nobel Prize' "
    "JOIN FIND full_name FROM UNIVERSITY_DW.faculty "
    "WHERE the person is a professor in the research lab "
    "ON ENTITY title = full_name"
)

Q2 = (
    "FIND COUNT(title) FROM WIKIPEDIA "
    "WHERE pages in the category 'University buildings' "
    "JOIN FIND name FROM UNIVERSITY_DW.buildings "
    "ON ENTITY title = name"
)


def main() -> None:
    engine = Engine(load_catalog_file(ROOT / "fixtures" / "catalog.json"))
    client = TestClient(create_app(engine))
    OUT.mkdir(parents=True, exist_ok=True)

    def save(name: str, payload) -> None:
        (OUT / f"{name}.json").write_text(json.dumps(payload, indent=2) + "\n")

    save("catalog_sources", client.get("/catalog/sources").json())
    save("source_wikipedia", client.get("/catalog/sources/WIKIPEDIA").json())

    session = client.post("/sessions", json={"principal": "me@example.org"}).json()
    sid = session["session_id"]
    save("session_create", session)

    save("submit_q3", client.post(f"/sessions/{sid}/statements", json={"text": Q3}).json())
    save("submit_q2", client.post(f"/sessions/{sid}/statements", json={"text": Q2}).json())
    error = client.post(f"/sessions/{sid}/statements", json={"text": "FIND FROM"})
    save("submit_parse_error", {"status": error.status_code, "body": error.json()})

    save("faculty_scan",
         client.post(f"/sessions/{sid}/statements",
                     json={"text": "FIND full_name, title FROM faculty"}).json())
    save("table_page",
         client.get(f"/sessions/{sid}/tables/_r3", params={"offset": 10, "limit": 15}).json())
    save("session_log", client.get(f"/sessions/{sid}/log").json())
    save("session_metrics", client.get(f"/sessions/{sid}/metrics").json())
    save("session_tables", client.get(f"/sessions/{sid}/tables").json())
    print(f"recorded fixtures into {OUT}")


if __name__ == "__main__":
    main()
