"""The `rubicon` command line: repl, run, explain, bench, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .aql import parse_script
from .bench import load_workload, render_text, run_benchmark
from .catalog import load_catalog_file
from .engine import Engine, Session
from .errors import EngineError
from .plan import CostModel, build_script, explain, optimize
from .table import ResultTable
from .values import to_json_value


def format_table(table: ResultTable, limit: int = 40) -> str:
    headers = [c.name for c in table.schema]
    rows = [
        ["" if v is None else str(to_json_value(v)) for v in row]
        for row in table.rows[:limit]
    ]
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for r in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    if len(table.rows) > limit:
        lines.append(f"… ({len(table.rows)} rows total)")
    else:
        lines.append(f"({len(table.rows)} rows)")
    return "\n".join(lines)


def _engine(args) -> Engine:
    catalog = load_catalog_file(args.catalog)
    model = CostModel.from_file(args.cost_model) if args.cost_model else CostModel()
    return Engine(catalog, cost_model=model)


def cmd_repl(args) -> int:
    engine = _engine(args)
    session = engine.new_session(principal=args.principal)
    print(f"rubicon {__version__} — {len(engine.catalog.sources())} sources; "
          f"statements end with ';' (quit with \\q)")
    buffer = ""
    while True:
        try:
            prompt = "aql> " if not buffer else "...> "
            line = input(prompt)
        except EOFError:
            print()
            return 0
        if line.strip() in ("\\q", "\\quit", "exit"):
            return 0
        buffer += line + "\n"
        if ";" not in line:
            continue
        text, buffer = buffer, ""
        try:
            for stmt in parse_script(text):
                table, metrics = session.run_interactive(stmt)
                name = session.log[-1].result_name
                for payload in session.pop_stdout_outputs():
                    print(payload, end="")
                print(format_table(table))
                print(
                    f"[{name}] k={metrics.tool_calls} "
                    f"ttft={metrics.ttft_seconds * 1000:.1f}ms"
                )
        except EngineError as err:
            payload = err.payload()
            where = f" at offset {payload['offset']}" if "offset" in payload else ""
            print(f"error ({payload['stage']}{where}): {payload['message']}")


def cmd_run(args) -> int:
    engine = _engine(args)
    session = engine.new_session(principal=args.principal)
    script = Path(args.script).read_text()
    try:
        table, metrics = session.run_compiled(script)
    except EngineError as err:
        print(f"error ({err.stage}): {err.message}", file=sys.stderr)
        return 1
    for payload in session.pop_stdout_outputs():
        print(payload, end="")
    print(format_table(table))
    print(
        f"k={metrics.tool_calls} tokens={metrics.tokens_in}/{metrics.tokens_out} "
        f"cost=${metrics.provider_cost:.6f} ttft={metrics.ttft_seconds * 1000:.1f}ms"
    )
    return 0


def cmd_explain(args) -> int:
    engine = _engine(args)
    session = engine.new_session(principal=args.principal)
    script = Path(args.script).read_text()
    try:
        statements = parse_script(script)
        plan = build_script(statements, session._resolver())
        shared: dict = {}
        for root in plan.roots:
            physical = optimize(
                root,
                engine.cost_model,
                engine.translator,
                shared_ids=plan.shared_ids,
                shared=shared,
            )
            print(explain(physical))
    except EngineError as err:
        print(f"error ({err.stage}): {err.message}", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    engine = _engine(args)
    workload = load_workload(args.workload)
    report = run_benchmark(
        workload, engine, principal=args.principal, parallel=args.parallel
    )
    print(render_text(report), end="")
    if args.report:
        Path(args.report).write_text(report.to_json_text())
        print(f"report written to {args.report}")
    ok = report.accuracy_pct == 100.0 and report.all_coverage_pass()
    return 0 if ok else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    engine = _engine(args)
    app = create_app(engine, statement_timeout=args.timeout, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rubicon",
        description="Federated find/from/where query engine over wrapped sources.",
    )
    parser.add_argument("--version", action="version", version=f"rubicon {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--catalog", required=True, help="catalog JSON file")
        p.add_argument("--principal", default="analyst", help="requesting principal")
        p.add_argument("--cost-model", default=None, help="cost-model JSON file")

    p = sub.add_parser("repl", help="interactive statement-at-a-time session")
    common(p)
    p.set_defaults(fn=cmd_repl)

    p = sub.add_parser("run", help="execute a script in compiled mode")
    p.add_argument("script", help=".aql script file")
    common(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("explain", help="print the optimized plan without executing")
    p.add_argument("script", help=".aql script file")
    common(p)
    p.set_defaults(fn=cmd_explain)

    p = sub.add_parser("bench", help="run a benchmark workload and score it")
    p.add_argument("workload", help="workload JSON file")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.add_argument("--parallel", action="store_true", help="run queries concurrently")
    common(p)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("serve", help="serve sessions over HTTP")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--timeout", type=float, default=30.0,
                   help="per-statement timeout in seconds")
    p.add_argument("--ui", default=None,
                   help="serve a built workbench directory at /ui")
    common(p)
    p.set_defaults(fn=cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as err:
        print(f"error ({err.stage}): {err.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
