import pytest

from rubicon.aql import parse_statement
from rubicon.catalog import Catalog
from rubicon.plan import Resolver, build_statement, estimate, optimize
from rubicon.plan.nodes import PHashJoin, PProbeJoin, PProject, PScan

from . import planshapes
from .conftest import inline_source

Q3 = planshapes.Q3_AWARD_FIRST


def build(catalog, text):
    return build_statement(parse_statement(text), Resolver(catalog=catalog))


class TestPushdown:
    def test_single_leaf_unchanged_except_pushdown(self, engine):
        logical = build(engine.catalog, "FIND full_name FROM faculty WHERE "
                                        "the person is a professor in the research lab")
        plan = optimize(logical, engine.cost_model, engine.translator)
        assert isinstance(plan, PScan)
        assert plan.native is not None
        assert plan.local is None

    def test_keyword_dialect_comparison_falls_back_to_local(self, engine):
        logical = build(engine.catalog,
                        "FIND event_name FROM events WHERE the event date is after 2026-02-01")
        plan = optimize(logical, engine.cost_model, engine.translator)
        scan = plan.input if isinstance(plan, PProject) else plan
        assert isinstance(scan, PScan)
        assert scan.native is None
        assert scan.local is not None
        assert "event_date" in scan.fetch  # fetched for local evaluation

    def test_pushdown_disabled_costs_more(self, engine):
        logical = build(engine.catalog,
                        "FIND title FROM WIKIPEDIA WHERE 'Turing Award'")
        pushed = optimize(logical, engine.cost_model, engine.translator)
        unpushed = optimize(logical, engine.cost_model, engine.translator, pushdown=False)
        assert estimate(pushed, engine.cost_model)[0] <= estimate(unpushed, engine.cost_model)[0]


class TestStrategyChoice:
    def test_q3_chooses_bulk_hash_join_award_shape(self, engine):
        logical = build(engine.catalog, Q3)
        plan = optimize(logical, engine.cost_model, engine.translator)
        node = plan.input if isinstance(plan, PProject) else plan
        assert isinstance(node, PHashJoin)
        assert isinstance(node.left, PScan) and isinstance(node.right, PScan)
        assert {node.left.relation.name, node.right.relation.name} == {
            "WIKIPEDIA.Page", "UNIVERSITY_DW.faculty",
        }
        assert node.left.native is not None and node.right.native is not None
        assert plan.est.calls == 2  # two bulk source calls, no probes

    def test_probe_join_chosen_when_probes_are_cheap(self):
        cat = Catalog()
        cat.register_source(
            inline_source(
                "A", "relational-fixture",
                {"tiny": ([("k", "text")], [{"k": "x"}, {"k": "y"}])},
            )
        )
        cat.register_source(
            inline_source(
                "B", "relational-fixture",
                {"huge": ([("k", "text"), ("v", "integer")], [{"k": "x", "v": 1}])},
            )
        )
        cat.set_statistics("huge", row_estimate=1_000_000, per_row_cost=0.01)
        logical = build(cat, "FIND k FROM tiny JOIN FIND v FROM huge ON k = k")
        from rubicon.plan import CostModel

        plan = optimize(logical, CostModel())
        node = plan.input if isinstance(plan, PProject) else plan
        assert isinstance(node, PProbeJoin)
        assert node.probed.name == "B.huge"

    def test_tie_break_is_deterministic_and_lexicographic(self):
        cat = Catalog()
        rows = [{"k": f"v{i}"} for i in range(10)]
        cat.register_source(
            inline_source("S", "relational-fixture",
                          {"zeta": ([("k", "text")], rows),
                           "alpha": ([("k", "text")], rows)})
        )
        from rubicon.plan import CostModel

        logical = build(cat, "FIND k FROM zeta JOIN FIND k FROM alpha")
        plans = [optimize(logical, CostModel()) for _ in range(5)]
        shapes = {self._shape(p) for p in plans}
        assert len(shapes) == 1
        node = plans[0].input if isinstance(plans[0], PProject) else plans[0]
        # symmetric costs: the lexicographically smaller table leads
        assert node.left.relation.name == "S.alpha"

    @staticmethod
    def _shape(plan):
        from rubicon.plan import explain

        return explain(plan)

    def test_workspace_scans_cost_no_calls(self, engine):
        session = engine.new_session()
        session.run_interactive("SAVE (FIND full_name FROM faculty) AS staff")
        logical = build_statement(
            parse_statement("FIND full_name FROM staff"),
            session._resolver(),
        )
        plan = optimize(logical, engine.cost_model, engine.translator)
        assert plan.est.calls == 0


class TestChainReordering:
    def test_disconnected_middle_orders_are_skipped(self, engine):
        # events ⋈ Page ⋈ faculty: Page connects to both ends
        text = (
            "FIND event_name FROM events "
            "JOIN FIND title FROM WIKIPEDIA ON ENTITY building = title "
            "JOIN FIND full_name FROM faculty ON ENTITY title = full_name"
        )
        logical = build(engine.catalog, text)
        plan = optimize(logical, engine.cost_model, engine.translator)
        assert plan.est.calls == 3
        table = planshapes.run_plan(engine, plan)
        assert [c.name for c in table.schema] == ["event_name", "title", "full_name"]
