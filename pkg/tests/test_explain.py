import re

from rubicon.aql import parse_statement
from rubicon.plan import Resolver, build_statement, explain, optimize

from . import planshapes


def test_single_scan_plan_is_one_line(engine):
    logical = build_statement(
        parse_statement("FIND full_name FROM faculty"),
        Resolver(catalog=engine.catalog),
    )
    plan = optimize(logical, engine.cost_model, engine.translator)
    text = explain(plan)
    assert len(text.splitlines()) == 1
    assert text.startswith("Scan UNIVERSITY_DW.faculty [full_name]")


def test_award_first_tree_shape_and_costs():
    """Golden structure for the hand-built award-first physical plan."""
    import tests.conftest as c
    from rubicon.catalog import load_catalog_file
    from rubicon.engine import Engine

    engine = Engine(load_catalog_file(c.FIXTURES / "catalog.json"))
    plan = planshapes.award_first_plan(engine)
    lines = explain(plan).splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("HashJoin ENTITY title = full_name")
    assert lines[1].strip().startswith("Scan WIKIPEDIA.Page [title, categories] "
                                       'where ("Turing Award") OR ("Nobel Prize")')
    assert lines[2].strip().startswith("Scan UNIVERSITY_DW.faculty [full_name]")
    for line in lines:
        assert re.search(r"rows≈[\d.]+, calls≈[\d.]+, cost≈[\d.]+", line)


def test_probe_plan_line_includes_probe_count():
    import tests.conftest as c
    from rubicon.catalog import load_catalog_file
    from rubicon.engine import Engine

    engine = Engine(load_catalog_file(c.FIXTURES / "catalog.json"))
    engine.catalog.set_statistics("faculty", row_estimate=50)
    # a predicate-free bound side estimates exactly 50 probes
    from rubicon.plan.nodes import Estimates, PProbeJoin, ResolvedJoin
    from rubicon.plan.optimizer import _with_est
    from rubicon.table import Column

    rel, parts = planshapes._leaf(
        engine.catalog, engine.translator, "UNIVERSITY_DW.faculty", ["full_name"], None
    )
    page_rel, page_parts = planshapes._leaf(
        engine.catalog, engine.translator, "WIKIPEDIA", ["title"], planshapes.AWARD_PRED
    )
    bound = planshapes._scan(rel, parts, ["full_name"], engine.cost_model)
    plan = _with_est(
        PProbeJoin(
            bound=bound, probed=page_rel, probed_fetch=("title",),
            probed_native=page_parts.native, probed_local=None,
            condition=ResolvedJoin(pairs=(("full_name", "title"),), mode="entity"),
            left_names=("full_name",), right_keep=(("title", "title"),),
            columns=(Column("full_name", "text"), Column("title", "text")),
            est=Estimates(0, 0, 0),
        ),
        engine.cost_model,
    )
    text = explain(plan)
    assert "probe × 50" in text
    assert "into WIKIPEDIA.Page" in text


def test_explain_is_stable(engine):
    logical = build_statement(
        parse_statement(planshapes.Q3_AWARD_FIRST), Resolver(catalog=engine.catalog)
    )
    plan = optimize(logical, engine.cost_model, engine.translator)
    assert explain(plan) == explain(plan)
