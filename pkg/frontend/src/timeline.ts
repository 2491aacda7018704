/** Session timeline entries and the source-call composition chart data.
 * The timeline mirrors the server log order exactly; rows, plans and traces
 * are always fetched from the server, never recomputed client-side. */

import type { LogEntry, TranslationTrace } from "./types.js";

export interface TimelineEntry {
  index: number;
  statement: string;
  resultName: string | null;
  rowCount: number;
  toolCalls: number;
  cost: number;
  ttftSeconds: number;
  status: "ok" | "error";
  errorStage?: string;
  errorMessage?: string;
}

export function toTimeline(log: LogEntry[]): TimelineEntry[] {
  return log.map((entry, index) => ({
    index,
    statement: entry.statement,
    resultName: entry.result_name,
    rowCount: entry.row_count,
    toolCalls: entry.metrics.tool_calls,
    cost: entry.metrics.provider_cost,
    ttftSeconds: entry.metrics.ttft_seconds,
    status: entry.status,
    errorStage: entry.error?.stage,
    errorMessage: entry.error?.message,
  }));
}

/** Native call counts per source, aggregated across the session log
 * (the stacked-bar composition: which sources answered this session). */
export function sourceComposition(log: LogEntry[]): Map<string, number> {
  const out = new Map<string, number>();
  for (const entry of log) {
    for (const p of entry.provenance) {
      if (p.kind !== "native") continue;
      out.set(p.source, (out.get(p.source) ?? 0) + p.call_count);
    }
  }
  return out;
}

/** Composition for one statement (per-query bar). */
export function statementComposition(entry: LogEntry): Map<string, number> {
  return sourceComposition([entry]);
}

/** Deterministic text report of one statement's translation traces. */
export function traceReport(traces: TranslationTrace[]): string {
  if (traces.length === 0) return "(no translated predicates)";
  return traces
    .map((trace) => {
      const lines = [`utterance: ${trace.utterance}`, `translator: ${trace.translator}`];
      if (trace.matched_patterns.length > 0) {
        lines.push("patterns:");
        lines.push(...trace.matched_patterns.map((p) => `  - ${p}`));
      } else {
        lines.push("patterns: none");
      }
      if (trace.column_bindings.length > 0) {
        lines.push("column bindings:");
        lines.push(...trace.column_bindings.map(([col, text]) => `  - ${col} <- '${text}'`));
      }
      if (trace.residual_terms.length > 0) {
        lines.push(`residual terms: ${trace.residual_terms.join(", ")}`);
      }
      if (trace.translator !== "deterministic") {
        lines.push(
          `tokens: in=${trace.tokens_in} out=${trace.tokens_out} cost=$${trace.provider_cost}`,
        );
      }
      return lines.join("\n");
    })
    .join("\n\n");
}
