#!/usr/bin/env python3
"""Regenerate the shipped fixtures and benchmark workload.

Deterministic: a fixed seed drives every choice, so running this script
always reproduces the exact same fixture bytes.  Ground-truth tables are
derived here from the master records directly (never by running the query
engine), which keeps the benchmark oracle independent of the code under
test.

Usage: python3 scripts/make_fixtures.py [--out fixtures]
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

SEED = 20260811

FIRST = [
    "Ada", "Grace", "Edsger", "Barbara", "Niklaus", "Donald", "Radia", "Vint",
    "Frances", "John", "Leslie", "Shafi", "Silvio", "Andrew", "Ken", "Dennis",
    "Tim", "Margaret", "Katherine", "Alan",
]
LAST = [
    "Harmon", "Okafor", "Lindqvist", "Moreau", "Takeda", "Bergstrom", "Castillo",
    "Novak", "Adeyemi", "Keller", "Ostrowski", "Vance", "Ibarra", "Sorensen",
    "Whitfield", "Nakamura", "Delacroix", "Haugen", "Petrov", "Mbeki", "Quist",
    "Romero", "Ferrante", "Lindgren", "Ashworth", "Kovacs", "Brennan", "Oduya",
    "Marchetti", "Hollis",
]

WIKI_FIRST = [
    "Theodora", "Casimir", "Ingrid", "Bartholomew", "Yuki", "Soraya", "Ezra",
    "Magnolia", "Perceval", "Odette", "Lazarus", "Vivienne", "Corwin", "Althea",
    "Ragnar", "Celestine", "Dmitri", "Wilhelmina", "Octavio", "Seraphina",
]
WIKI_LAST = [
    "Aldercroft", "Bellweather", "Carmody", "Dunmore", "Eastgate", "Fairbairn",
    "Grimaldi", "Hawthorne", "Iverson", "Juneau", "Kirkbride", "Loxley",
    "Montrose", "Nightingale", "Oakhurst", "Pemberton", "Quillfeather",
    "Ravensworth", "Stellanova", "Thornbury",
]

FIELDS = [
    ("computer science", "Computer scientists"),
    ("physics", "Physicists"),
    ("chemistry", "Chemists"),
    ("economics", "Economists"),
    ("medicine", "Medical researchers"),
]

BUILDINGS_WITH_PAGES = [
    ("Old Main Hall", 1891),
    ("Turing Hall", 1967),
    ("Walker Library", 1924),
    ("Calder Auditorium", 1973),
    ("Birchwood Laboratory", 1981),
    ("Sona Observatory", 1959),
    ("Fenwick Pavilion", 2004),
    ("Ostrand Hall", 1948),
    ("Veldt Commons", 2012),
]
BUILDINGS_WITHOUT_PAGES = [
    ("Dyson Center", 1988), ("Quarry Annex", 1979), ("Linden House", 1931),
    ("Pelham Workshop", 1994), ("Arbor Row", 2001), ("Crestline Studio", 2008),
    ("Halvard Wing", 1963), ("Juniper Block", 1985), ("Kestrel Yard", 1997),
    ("Mercer Lodge", 1942), ("Northgate Depot", 1976), ("Opal Court", 2015),
    ("Pinecrest Annex", 1969), ("Sablewood House", 1990), ("Tamarind Block", 2006),
]
FOREIGN_BUILDINGS = [
    ("Harlow Rotunda", "Westfield College"),
    ("Graniteview Hall", "Northbrook Institute"),
    ("Ashford Pavilion", "Riverton University"),
    ("Bryany Commons", "Lakeshore Polytechnic"),
    ("Clearwater Atrium", "Southmoor Academy"),
    ("Draymore Hall", "Eastvale College"),
]

MISC_PAGES = [
    ("Blue Heron", "The blue heron is a large wading bird found near wetlands and slow rivers."),
    ("Granite Coast", "The granite coast is a rocky shoreline shaped by glacial retreat."),
    ("Salt Marsh Ecology", "Salt marshes host dense grasses and migratory shorebirds."),
    ("Aurora Photography", "Photographing aurora displays requires long exposures and dark skies."),
    ("Sourdough Baking", "Sourdough relies on wild yeast cultures maintained in a starter."),
    ("Alpine Meadows", "Alpine meadows bloom briefly between snowmelt and the first frost."),
    ("Tidal Power", "Tidal generators convert predictable coastal currents into electricity."),
    ("Paper Marbling", "Marbling floats pigment on thickened water to pattern paper."),
    ("Glass Harmonica", "The glass harmonica produces tones from rotating tuned bowls."),
    ("Cave Surveying", "Surveying caves combines compass traverses with depth soundings."),
]

LAB_NAME = "Data Systems Research Lab"
UNIVERSITY = "Aldergate University"
ME = "me@example.org"
ALICE = "alice@example.org"
BOB = "bob@example.org"
CAROL = "carol@example.org"

NEWSLETTERS = [
    ("Events Weekly", "events-weekly@university.example", True),
    ("Research Digest", "research-digest@university.example", True),
    ("Campus News", "campus-news@university.example", True),
    ("Alumni Quarterly", "alumni-quarterly@university.example", False),
    ("Parking Notices", "parking-notices@university.example", False),
    ("Library Bulletin", "library-bulletin@university.example", False),
    ("Wellness Letter", "wellness-letter@university.example", False),
    ("Grants Gazette", "grants-gazette@university.example", False),
]

SUMMARY_TEXT = (
    "Alice and Bob agreed on seven two-source benchmark queries, fixed the "
    "grading rubric, and scheduled a dry run for the review meeting."
)

TITLES = ["Professor", "Associate Professor", "Assistant Professor", "Distinguished Professor"]


def faculty_names() -> list[str]:
    rng = random.Random(SEED)
    names = []
    used = set()
    while len(names) < 50:
        name = f"{rng.choice(FIRST)} {rng.choice(LAST)}"
        if name not in used:
            used.add(name)
            names.append(name)
    return names


def wiki_laureate_names(exclude: set[str]) -> list[str]:
    rng = random.Random(SEED + 1)
    names = []
    used = set(exclude)
    while len(names) < 397:
        name = f"{rng.choice(WIKI_FIRST)} {rng.choice(WIKI_LAST)} {rng.randint(2, 99)}"
        # numeric suffix keeps 397 names distinct from a 400-combo pool
        name = name.rsplit(" ", 1)[0] if name.split()[-1] == "2" else name
        if name not in used:
            used.add(name)
            names.append(name)
    return names


def write_ndjson(path: Path, records: list[dict]) -> None:
    path.write_text(
        "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)
    )


def write_schema(path: Path, tables: list[dict]) -> None:
    path.write_text(json.dumps({"tables": tables}, indent=2, sort_keys=True) + "\n")


def table_entry(name, columns, rows, per_call=1.0, per_row=0.001) -> dict:
    return {
        "name": name,
        "columns": columns,
        "row_estimate": rows,
        "per_call_cost": per_call,
        "per_row_cost": per_row,
    }


def gt_files(out: Path, qid: str, columns: list[list[str]], rows: list[dict]) -> dict:
    gt_dir = out / "workload" / "ground_truth"
    gt_dir.mkdir(parents=True, exist_ok=True)
    (gt_dir / f"{qid}.schema.json").write_text(
        json.dumps({"columns": [{"name": c[0], "type": c[1]} for c in columns]},
                   sort_keys=True, separators=(",", ":")) + "\n"
    )
    write_ndjson(gt_dir / f"{qid}.ndjson", rows)
    return {
        "schema": f"workload/ground_truth/{qid}.schema.json",
        "rows": f"workload/ground_truth/{qid}.ndjson",
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="fixtures")
    args = parser.parse_args()
    out = Path(args.out)
    rng = random.Random(SEED + 2)

    names = faculty_names()
    laureate_faculty = [
        (names[7], "Turing Award", 2003),
        (names[19], "Turing Award", 2014),
        (names[31], "Nobel Prize", 2009),
    ]

    # ---- UNIVERSITY_DW --------------------------------------------------------
    dw = out / "university_dw"
    dw.mkdir(parents=True, exist_ok=True)
    buildings = [
        {"name": n, "building_code": f"B{i:03d}", "year_built": y}
        for i, (n, y) in enumerate(BUILDINGS_WITH_PAGES + BUILDINGS_WITHOUT_PAGES, start=1)
    ]
    faculty = []
    for i, name in enumerate(names):
        faculty.append(
            {
                "full_name": name,
                "title": TITLES[i % len(TITLES)],
                "lab": LAB_NAME,
                "email": name.lower().replace(" ", ".") + "@university.example",
                "office_building": buildings[i % len(buildings)]["name"],
            }
        )
    turing_rooms = [f"T-2{n:02d}" for n in range(1, 5)]
    rooms = [
        {"room_code": code, "building_name": "Turing Hall", "capacity": 20 + 4 * i}
        for i, code in enumerate(turing_rooms)
    ]
    other_room_buildings = [b["name"] for b in buildings if b["name"] != "Turing Hall"]
    for i in range(36):
        building = other_room_buildings[i % len(other_room_buildings)]
        prefix = building.split()[0][0]
        rooms.append(
            {"room_code": f"{prefix}-{100 + i}", "building_name": building,
             "capacity": 12 + (i * 7) % 60}
        )
    newsletters = [
        {"name": n, "sender_address": addr} for n, addr, _ in NEWSLETTERS
    ]
    campus_events = [
        {"event_code": f"CE-{i:03d}", "venue": buildings[(i * 3) % len(buildings)]["name"],
         "attendance": 40 + (i * 13) % 300}
        for i in range(10)
    ]

    tables = [
        table_entry("faculty", [["full_name", "text"], ["title", "text"], ["lab", "text"],
                                 ["email", "text"], ["office_building", "text"]], len(faculty)),
        table_entry("buildings", [["name", "text"], ["building_code", "text"],
                                   ["year_built", "integer"]], len(buildings)),
        table_entry("rooms", [["room_code", "text"], ["building_name", "text"],
                               ["capacity", "integer"]], len(rooms)),
        table_entry("newsletters", [["name", "text"], ["sender_address", "text"]],
                    len(newsletters)),
        table_entry("campus_events", [["event_code", "text"], ["venue", "text"],
                                       ["attendance", "integer"]], len(campus_events)),
    ]
    write_ndjson(dw / "faculty.ndjson", faculty)
    write_ndjson(dw / "buildings.ndjson", buildings)
    write_ndjson(dw / "rooms.ndjson", rooms)
    write_ndjson(dw / "newsletters.ndjson", newsletters)
    write_ndjson(dw / "campus_events.ndjson", campus_events)

    # facilities-style filler tables up to the warehouse's 97
    prefixes = [
        "room_use", "space_inventory", "maintenance_log", "energy_meter",
        "parking_zone", "custodial_rota", "hvac_unit", "lease_register",
        "keycard_audit", "signage_survey", "waste_stream", "shuttle_stop",
    ]
    filler_count = 97 - len(tables)
    for i in range(filler_count):
        name = f"{prefixes[i % len(prefixes)]}_{2015 + (i // len(prefixes))}"
        records = [
            {"record_id": j + 1,
             "facility": buildings[(i + j) % len(buildings)]["name"],
             "reading": round(10 + ((i * 17 + j * 31) % 900) / 10.0, 1)}
            for j in range(2)
        ]
        tables.append(
            table_entry(name, [["record_id", "integer"], ["facility", "text"],
                                ["reading", "real"]], len(records))
        )
        write_ndjson(dw / f"{name}.ndjson", records)
    write_schema(dw / "schema.json", tables)

    # ---- WIKIPEDIA -------------------------------------------------------------
    wiki = out / "wikipedia"
    wiki.mkdir(parents=True, exist_ok=True)
    pages = []

    def page(title, snippet, text, categories):
        slug = title.replace(" ", "_")
        pages.append(
            {"title": title, "url": f"https://wiki.example.org/wiki/{slug}",
             "snippet": snippet, "text": text, "categories": categories}
        )

    all_laureates = []
    for i, (name, award, year) in enumerate(laureate_faculty):
        all_laureates.append((name, award, year))
    for i, name in enumerate(wiki_laureate_names({n for n, _, _ in laureate_faculty})):
        award = "Turing Award" if i % 10 < 3 else "Nobel Prize"
        year = 1950 + (i * 7) % 74
        all_laureates.append((name, award, year))
    assert len(all_laureates) == 400
    def laureate_field(name, award, year):
        if award == "Turing Award":
            return FIELDS[0]
        return FIELDS[1 + (len(name) + year) % (len(FIELDS) - 1)]

    for name, award, year in all_laureates:
        field, category = laureate_field(name, award, year)
        page(
            name,
            f"{name} is a {field} researcher.",
            f"{name} is a {field} researcher who received the {award} in {year} "
            f"for foundational contributions to {field}.",
            f"{award} laureates; {category}",
        )

    for bname, year in BUILDINGS_WITH_PAGES:
        if bname == "Old Main Hall":
            text = (
                f"Old Main Hall is the historic main building of the {UNIVERSITY} "
                f"campus, completed in {year}; it hosts lectures, ceremonies, and "
                f"public events."
            )
        else:
            text = (
                f"{bname} is a lecture and research building on the {UNIVERSITY} "
                f"campus, completed in {year}."
            )
        page(bname, f"{bname} stands on the {UNIVERSITY} campus.", text,
             "University buildings; Academic architecture")
    for bname, school in FOREIGN_BUILDINGS:
        page(
            bname,
            f"{bname} stands on the {school} campus.",
            f"{bname} is a lecture building on the {school} campus.",
            "University buildings; Academic architecture",
        )
    for title, text in MISC_PAGES:
        page(title, text.split(".")[0] + ".", text, "Miscellany")

    write_schema(
        wiki / "schema.json",
        [table_entry("Page", [["title", "text"], ["url", "text"], ["snippet", "text"],
                               ["text", "text"], ["categories", "text"]], len(pages))],
    )
    write_ndjson(wiki / "Page.ndjson", pages)

    # ---- LAB_SITE ---------------------------------------------------------------
    lab = out / "lab_site"
    lab.mkdir(parents=True, exist_ok=True)
    events = []
    omh_dates = ["2026-01-12", "2026-01-27", "2026-02-10", "2026-02-21", "2026-03-02"]
    for i, date in enumerate(omh_dates):
        events.append(
            {"event_name": f"Systems Colloquium #{i + 1}", "event_date": date,
             "building": "Old Main Hall",
             "description": f"Colloquium session {i + 1} of the {LAB_NAME}."}
        )
    other_event_buildings = ["Turing Hall", "Walker Library", "Dyson Center", "Calder Auditorium"]
    for i in range(20):
        date = f"2026-0{1 + (i % 3)}-{4 + (i * 3) % 24:02d}"
        events.append(
            {"event_name": f"Reading Group #{i + 1}", "event_date": date,
             "building": other_event_buildings[i % len(other_event_buildings)],
             "description": f"Weekly reading group hosted by the {LAB_NAME}."}
        )
    projects = []
    statuses = []
    project_names = [
        "Project Meridian", "Project Quarry", "Project Lantern", "Project Sable",
        "Project Vireo", "Project Cobalt", "Project Drift", "Project Ember",
        "Project Fathom", "Project Garnet", "Project Halyard", "Project Inlet",
        "Project Juniper", "Project Krill", "Project Lodestar", "Project Mica",
        "Project Nimbus", "Project Orrery", "Project Pampas", "Project Quill",
        "Project Rookery", "Project Sextant", "Project Tarn", "Project Umber",
        "Project Vellum", "Project Wicker", "Project Xylem", "Project Yarrow",
        "Project Zephyr", "Project Atlas",
    ]
    active_turing = turing_rooms  # 4 active projects in Turing Hall rooms
    active_other = ["W-100", "C-103", "D-106"]
    other_rooms = [r["room_code"] for r in rooms if r["building_name"] != "Turing Hall"]
    a_t = a_o = 0
    for i, name in enumerate(project_names):
        if i < 4:
            status, room = "active", active_turing[i]
        elif i < 7:
            status, room = "active", other_rooms[i]
        elif i < 24:
            status, room = "completed", other_rooms[(i * 3) % len(other_rooms)]
        else:
            status, room = "paused", other_rooms[(i * 5) % len(other_rooms)]
        projects.append(
            {"project_name": name, "status": status, "room_code": room,
             "summary": f"{name} studies federated data access patterns."}
        )
    people = [
        {"person_name": names[i], "role": TITLES[i % len(TITLES)],
         "bio": f"{names[i]} works on data systems in the {LAB_NAME}."}
        for i in range(0, 24, 2)
    ]
    write_schema(
        lab / "schema.json",
        [
            table_entry("events", [["event_name", "text"], ["event_date", "date"],
                                    ["building", "text"], ["description", "text"]], len(events)),
            table_entry("projects", [["project_name", "text"], ["status", "text"],
                                      ["room_code", "text"], ["summary", "text"]], len(projects)),
            table_entry("people", [["person_name", "text"], ["role", "text"],
                                    ["bio", "text"]], len(people)),
        ],
    )
    write_ndjson(lab / "events.ndjson", events)
    write_ndjson(lab / "projects.ndjson", projects)
    write_ndjson(lab / "people.ndjson", people)

    # ---- EMAIL -------------------------------------------------------------------
    email = out / "email"
    email.mkdir(parents=True, exist_ok=True)
    messages = []
    thread = [
        (ALICE, BOB, "2026-03-01", "I drafted seven benchmark queries for the review; each needs exactly two sources."),
        (BOB, ALICE, "2026-03-01", "Looks good. The join cases should name their required sources explicitly."),
        (ALICE, BOB, "2026-03-02", "Agreed; I added the grading rubric next to the benchmark queries."),
        (BOB, ALICE, "2026-03-03", "Rubric approved. Scheduling the dry run for Thursday."),
    ]
    for sender, to, date, body in thread:
        messages.append(
            {"from": sender, "to": to, "subject": "Benchmark queries", "date": date,
             "body": body}
        )
    messages.append(
        {"from": ALICE, "to": BOB, "subject": "Lunch plans", "date": "2026-03-04",
         "body": "Courtyard cafe at noon?"}
    )
    digest_subjects = {
        "events-weekly@university.example": "Events Weekly digest #112",
        "research-digest@university.example": "Research Digest vol. 58",
        "campus-news@university.example": "Campus News briefing, March edition",
    }
    for n, addr, subscribed in NEWSLETTERS:
        if subscribed:
            messages.append(
                {"from": addr, "to": ME, "subject": digest_subjects[addr],
                 "date": "2026-03-02", "body": f"This week in {n}: seminars, deadlines, and openings."}
            )
        else:
            messages.append(
                {"from": addr, "to": CAROL, "subject": f"{n} circulation notice",
                 "date": "2026-03-02", "body": f"{n} reaches subscribers every month."}
            )
    filler_senders = [
        "facilities@university.example", "registrar@university.example",
        "it-helpdesk@university.example", "badge-office@university.example",
    ]
    recipients = [ME, CAROL, "dana@example.org", "eli@example.org"]
    i = 0
    while len(messages) < 300:
        sender = filler_senders[i % len(filler_senders)]
        to = recipients[(i * 7) % len(recipients)]
        date = f"2026-0{1 + (i % 3)}-{1 + (i * 11) % 27:02d}"
        messages.append(
            {"from": sender, "to": to, "subject": f"Status update #{i + 1}",
             "date": date, "body": f"Routine notice {i + 1}: no action required."}
        )
        i += 1
    write_schema(
        email / "schema.json",
        [table_entry("Message", [["from", "text"], ["to", "text"], ["subject", "text"],
                                  ["date", "date"], ["body", "text"]], len(messages))],
    )
    write_ndjson(email / "Message.ndjson", messages)

    # ---- PILE_LLM -------------------------------------------------------------------
    pile = out / "pile_llm"
    pile.mkdir(parents=True, exist_ok=True)
    doctorates = ["Aldergate University", "Northbrook Institute", "Riverton University",
                  "Lakeshore Polytechnic", "Westfield College"]
    bios = []
    promotion = {}
    for i, name in enumerate(names):
        date = f"{1996 + (i * 3) % 28}-0{1 + (i % 9)}-{1 + (i * 5) % 27:02d}"
        promotion[name] = date
        bios.append(
            {"full_name": name, "promoted_to_full_professor": date,
             "doctorate_from": doctorates[i % len(doctorates)]}
        )
    distractor_people = [
        f"{WIKI_FIRST[i]} {WIKI_LAST[-(i + 1)]}" for i in range(10)
    ]
    for i, name in enumerate(distractor_people):
        bios.append(
            {"full_name": name, "promoted_to_full_professor": f"{2000 + i}-06-15",
             "doctorate_from": doctorates[(i + 2) % len(doctorates)]}
        )
    summaries = [
        {"topic": "Benchmark queries", "summary": SUMMARY_TEXT,
         "participants": f"{ALICE}, {BOB}"},
        {"topic": "Benchmark queries v2", "summary":
            "Carol proposed extending the benchmark queries with a geospatial set.",
         "participants": f"{CAROL}, {ALICE}"},
    ]
    misc_topics = [
        "Office relocation", "Cluster maintenance window", "Reading group picks",
        "Travel reimbursements", "Poster printing", "Seminar catering",
        "Onboarding checklist", "Archive migration", "Badge renewals",
        "Website refresh",
    ]
    for i, topic in enumerate(misc_topics):
        summaries.append(
            {"topic": topic, "summary": f"Thread about {topic.lower()} resolved after {2 + i % 4} messages.",
             "participants": f"{CAROL}, dana@example.org"}
        )
    write_schema(
        pile / "schema.json",
        [
            table_entry("academic_bios", [["full_name", "text"],
                                           ["promoted_to_full_professor", "date"],
                                           ["doctorate_from", "text"]], len(bios)),
            table_entry("thread_summaries", [["topic", "text"], ["summary", "text"],
                                              ["participants", "text"]], len(summaries)),
        ],
    )
    write_ndjson(pile / "academic_bios.ndjson", bios)
    write_ndjson(pile / "thread_summaries.ndjson", summaries)

    # ---- catalog -------------------------------------------------------------------
    catalog = {
        "sources": [
            {"name": "WIKIPEDIA", "wrapper_kind": "document-corpus",
             "connection": {"path": "wikipedia"}},
            {"name": "UNIVERSITY_DW", "wrapper_kind": "relational-fixture",
             "connection": {"path": "university_dw"}},
            {"name": "LAB_SITE", "wrapper_kind": "document-corpus",
             "connection": {"path": "lab_site"}},
            {"name": "PILE_LLM", "wrapper_kind": "knowledge-stub",
             "connection": {"path": "pile_llm"}},
            {"name": "EMAIL", "wrapper_kind": "mailbox",
             "connection": {"path": "email"}},
        ]
    }
    (out / "catalog.json").write_text(json.dumps(catalog, indent=2) + "\n")

    # ---- workload -------------------------------------------------------------------
    wl = out / "workload"
    wl.mkdir(parents=True, exist_ok=True)
    probes_dir = wl / "probes"
    probes_dir.mkdir(parents=True, exist_ok=True)

    scripts = {
        "q1": (
            "-- research lab professors and their promotion-to-full dates\n"
            "FIND full_name\n"
            "FROM UNIVERSITY_DW.faculty\n"
            "WHERE the person is a professor in the research lab\n"
            "JOIN\n"
            "FIND full_name, promoted_to_full_professor\n"
            "FROM PILE_LLM.academic_bios;\n"
        ),
        "q2": (
            "-- how many campus buildings have an encyclopedia page\n"
            "FIND COUNT(title)\n"
            "FROM WIKIPEDIA\n"
            "WHERE pages in the category 'University buildings'\n"
            "JOIN\n"
            "FIND name\n"
            "FROM UNIVERSITY_DW.buildings\n"
            "ON ENTITY title = name;\n"
        ),
        "q3": (
            "-- award-first: laureates joined to research lab professors\n"
            "FIND title, categories\n"
            "FROM WIKIPEDIA\n"
            "WHERE people associated with 'Turing Award' or 'Nobel Prize'\n"
            "JOIN\n"
            "FIND full_name\n"
            "FROM UNIVERSITY_DW.faculty\n"
            "WHERE the person is a professor in the research lab\n"
            "ON ENTITY title = full_name;\n"
        ),
        "q4": (
            "-- summarize the alice/bob thread about benchmark queries\n"
            "FIND MIN(summary)\n"
            "FROM PILE_LLM.thread_summaries\n"
            "WHERE about 'benchmark queries'\n"
            "JOIN\n"
            "FIND subject\n"
            "FROM EMAIL.Message\n"
            "WHERE the thread between alice@example.org and bob@example.org about 'benchmark queries'\n"
            "ON ENTITY topic = subject;\n"
        ),
        "q5": (
            "-- university newsletters delivered to my mailbox\n"
            "FIND name\n"
            "FROM UNIVERSITY_DW.newsletters\n"
            "JOIN\n"
            "FIND from\n"
            "FROM EMAIL.Message\n"
            "WHERE delivered to me@example.org\n"
            "ON sender_address = from;\n"
        ),
        "q6": (
            "-- recent lab events held in the historic main campus building\n"
            "FIND event_name, event_date\n"
            "FROM LAB_SITE.events\n"
            "WHERE the event date is after 2026-02-01\n"
            "JOIN\n"
            "FIND title\n"
            "FROM WIKIPEDIA\n"
            "WHERE the page about the historic main campus building\n"
            "ON ENTITY building = title;\n"
        ),
        "q7": (
            "-- active projects in Turing Hall rooms\n"
            "FIND project_name, room_code\n"
            "FROM LAB_SITE.projects\n"
            "WHERE the status is active\n"
            "JOIN\n"
            "FIND room_code, building_name\n"
            "FROM UNIVERSITY_DW.rooms\n"
            "WHERE the building name is 'Turing Hall';\n"
        ),
    }
    for qid, text in scripts.items():
        (wl / f"{qid}.aql").write_text(text)

    probes = {
        "q1": {
            "UNIVERSITY_DW": "FIND full_name\nFROM UNIVERSITY_DW.faculty\nWHERE the person is a professor in the research lab;\n",
            "PILE_LLM": "FIND full_name, promoted_to_full_professor\nFROM PILE_LLM.academic_bios;\n",
        },
        "q2": {
            "WIKIPEDIA": "FIND COUNT(title)\nFROM WIKIPEDIA\nWHERE pages in the category 'University buildings';\n",
            "UNIVERSITY_DW": "FIND COUNT(name)\nFROM UNIVERSITY_DW.buildings;\n",
        },
        "q3": {
            "WIKIPEDIA": "FIND title, categories\nFROM WIKIPEDIA\nWHERE people associated with 'Turing Award' or 'Nobel Prize';\n",
            "UNIVERSITY_DW": "FIND full_name\nFROM UNIVERSITY_DW.faculty\nWHERE the person is a professor in the research lab;\n",
        },
        "q4": {
            "PILE_LLM": "FIND summary\nFROM PILE_LLM.thread_summaries\nWHERE about 'benchmark queries';\n",
            "EMAIL": "FIND subject, body\nFROM EMAIL.Message\nWHERE the thread between alice@example.org and bob@example.org about 'benchmark queries';\n",
        },
        "q5": {
            "UNIVERSITY_DW": "FIND name, sender_address\nFROM UNIVERSITY_DW.newsletters;\n",
            "EMAIL": "FIND from, subject\nFROM EMAIL.Message\nWHERE delivered to me@example.org;\n",
        },
        "q6": {
            "LAB_SITE": "FIND event_name, event_date, building\nFROM LAB_SITE.events\nWHERE the event date is after 2026-02-01;\n",
            "WIKIPEDIA": "FIND title\nFROM WIKIPEDIA\nWHERE the page about the historic main campus building;\n",
        },
        "q7": {
            "LAB_SITE": "FIND project_name, room_code\nFROM LAB_SITE.projects\nWHERE the status is active;\n",
            "UNIVERSITY_DW": "FIND room_code, building_name\nFROM UNIVERSITY_DW.rooms\nWHERE the building name is 'Turing Hall';\n",
        },
    }
    for qid, by_source in probes.items():
        for source, text in by_source.items():
            (probes_dir / f"{qid}_{source}.aql").write_text(text)

    # ---- ground truth (derived from the master records, not the engine) ---------------
    gt = {}
    gt["q1"] = gt_files(
        out, "q1",
        [["full_name", "text"], ["promoted_to_full_professor", "date"]],
        [{"full_name": n, "promoted_to_full_professor": promotion[n]} for n in names],
    )
    paged_buildings = {b for b, _ in BUILDINGS_WITH_PAGES}
    dw_building_names = {b["name"] for b in buildings}
    q2_count = len(paged_buildings & dw_building_names)
    gt["q2"] = gt_files(out, "q2", [["count(title)", "integer"]],
                        [{"count(title)": q2_count}])
    q3_rows = []
    for name, award, year in laureate_faculty:
        field, category = laureate_field(name, award, year)
        q3_rows.append(
            {"title": name, "categories": f"{award} laureates; {category}",
             "full_name": name}
        )
    gt["q3"] = gt_files(out, "q3",
                        [["title", "text"], ["categories", "text"], ["full_name", "text"]],
                        q3_rows)
    gt["q4"] = gt_files(out, "q4", [["min(summary)", "text"]],
                        [{"min(summary)": SUMMARY_TEXT}])
    gt["q5"] = gt_files(
        out, "q5", [["name", "text"], ["from", "text"]],
        [{"name": n, "from": addr} for n, addr, sub in NEWSLETTERS if sub],
    )
    gt["q6"] = gt_files(
        out, "q6",
        [["event_name", "text"], ["event_date", "date"], ["title", "text"]],
        [
            {"event_name": e["event_name"], "event_date": e["event_date"],
             "title": "Old Main Hall"}
            for e in events
            if e["building"] == "Old Main Hall" and e["event_date"] > "2026-02-01"
        ],
    )
    gt["q7"] = gt_files(
        out, "q7",
        [["project_name", "text"], ["room_code", "text"], ["building_name", "text"]],
        [
            {"project_name": p["project_name"], "room_code": p["room_code"],
             "building_name": "Turing Hall"}
            for p in projects
            if p["status"] == "active" and p["room_code"] in turing_rooms
        ],
    )

    relevance = {
        "q1": {"WIKIPEDIA": "I", "UNIVERSITY_DW": "R", "LAB_SITE": "O", "PILE_LLM": "R", "EMAIL": "I"},
        "q2": {"WIKIPEDIA": "R", "UNIVERSITY_DW": "R", "LAB_SITE": "I", "PILE_LLM": "I", "EMAIL": "I"},
        "q3": {"WIKIPEDIA": "R", "UNIVERSITY_DW": "R", "LAB_SITE": "O", "PILE_LLM": "I", "EMAIL": "I"},
        "q4": {"WIKIPEDIA": "I", "UNIVERSITY_DW": "I", "LAB_SITE": "I", "PILE_LLM": "R", "EMAIL": "R"},
        "q5": {"WIKIPEDIA": "I", "UNIVERSITY_DW": "R", "LAB_SITE": "I", "PILE_LLM": "I", "EMAIL": "R"},
        "q6": {"WIKIPEDIA": "R", "UNIVERSITY_DW": "I", "LAB_SITE": "R", "PILE_LLM": "I", "EMAIL": "I"},
        "q7": {"WIKIPEDIA": "I", "UNIVERSITY_DW": "R", "LAB_SITE": "R", "PILE_LLM": "I", "EMAIL": "I"},
    }
    descriptions = {
        "q1": "List all research lab professors and the dates they were promoted to full professor.",
        "q2": "How many university buildings have an encyclopedia page?",
        "q3": "Which research lab professors have won a Turing Award or a Nobel Prize?",
        "q4": "Summarize the email thread between two users about benchmark queries.",
        "q5": "Which university email newsletters am I subscribed to?",
        "q6": "What lab events have taken place in the historic main campus building recently?",
        "q7": "Which projects are currently being worked on in a particular university building?",
    }
    workload = {
        "queries": [
            {
                "id": qid.upper(),
                "description": descriptions[qid],
                "script": f"workload/{qid}.aql",
                "ground_truth": gt[qid],
                "relevance": relevance[qid],
                "insufficiency_probes": [
                    f"workload/probes/{qid}_{source}.aql" for source in probes[qid]
                ],
            }
            for qid in ["q1", "q2", "q3", "q4", "q5", "q6", "q7"]
        ]
    }
    (wl / "workload.json").write_text(json.dumps(workload, indent=2) + "\n")
    print(f"fixtures written to {out}/ "
          f"(pages={len(pages)}, faculty={len(faculty)}, messages={len(messages)})")


if __name__ == "__main__":
    main()
