import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { sourceComposition, statementComposition, toTimeline, traceReport } from "../src/timeline.js";
import { pageInfo } from "../src/pagination.js";
import type { LogEntry } from "../src/types.js";

function fixture<T>(name: string): T {
  const path = join(__dirname, "..", "fixtures", `${name}.json`);
  return JSON.parse(readFileSync(path, "utf-8")) as T;
}

const log = fixture<{ log: LogEntry[] }>("session_log").log;

describe("toTimeline", () => {
  it("mirrors the server log order exactly", () => {
    const entries = toTimeline(log);
    expect(entries.map((e) => e.index)).toEqual(log.map((_, i) => i));
    expect(entries.map((e) => e.statement)).toEqual(log.map((e) => e.statement));
  });

  it("carries metrics and status through unchanged", () => {
    const entries = toTimeline(log);
    const q3 = entries[0];
    expect(q3.status).toBe("ok");
    expect(q3.toolCalls).toBe(2);
    expect(q3.rowCount).toBe(3);
    const err = entries.find((e) => e.status === "error");
    expect(err).toBeDefined();
    expect(err!.errorStage).toBe("parse");
  });
});

describe("sourceComposition", () => {
  it("matches the session's recorded provenance counts", () => {
    const expected = fixture<{ per_source_calls: Record<string, number> }>(
      "session_metrics",
    ).per_source_calls;
    const chart = sourceComposition(log.filter((e) => e.status === "ok"));
    expect(Object.fromEntries(chart)).toEqual(expected);
  });

  it("aggregates a single statement's bar from its provenance", () => {
    const q3 = log[0];
    const bar = statementComposition(q3);
    expect(Object.fromEntries(bar)).toEqual({ WIKIPEDIA: 1, UNIVERSITY_DW: 1 });
  });

  it("ignores workspace-local scans", () => {
    const synthetic: LogEntry = {
      ...log[0],
      provenance: [
        { source: "_r1", native_query: "workspace scan", call_count: 0,
          duration_seconds: 0, timestamp: 0, kind: "workspace" },
      ],
    };
    expect(sourceComposition([synthetic]).size).toBe(0);
  });
});

describe("traceReport", () => {
  it("renders the recorded Q3 traces with patterns and bindings", () => {
    const q3 = log[0];
    expect(q3.traces.length).toBeGreaterThan(0);
    const report = traceReport(q3.traces);
    expect(report).toContain("quoted literal: 'Turing Award'");
    expect(report).toContain("translator: deterministic");
    expect(report).toContain("column bindings:");
  });

  it("handles statements without predicates", () => {
    expect(traceReport([])).toBe("(no translated predicates)");
  });
});

describe("pageInfo", () => {
  it("pages a 10000-row table at 100 rows per page into 100 pages", () => {
    const info = pageInfo(10_000, 100, 0);
    expect(info.pageCount).toBe(100);
    expect(info.hasNext).toBe(true);
    expect(info.hasPrev).toBe(false);
  });

  it("clamps out-of-range pages and computes offsets", () => {
    expect(pageInfo(50, 15, 2).offset).toBe(30);
    expect(pageInfo(50, 15, 99).page).toBe(3);
    expect(pageInfo(0, 100, 0).pageCount).toBe(1);
  });

  it("partitions without overlap or gaps", () => {
    const total = 137;
    const size = 25;
    const seen: number[] = [];
    for (let p = 0; p < pageInfo(total, size, 0).pageCount; p++) {
      const info = pageInfo(total, size, p);
      for (let i = info.offset; i < Math.min(info.offset + info.limit, total); i++) {
        seen.push(i);
      }
    }
    expect(seen).toEqual([...Array(total).keys()]);
  });
});
