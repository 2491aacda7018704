/** Server payload shapes, field names fixed by docs/api.md. */

export interface ColumnInfo {
  name: string;
  type: string; // text | integer | real | date | boolean
}

export interface SessionInfo {
  session_id: string;
  principal: string;
  created_at: number;
}

export interface Metrics {
  tokens_in: number;
  tokens_out: number;
  tool_calls: number;
  provider_cost: number;
  ttft_seconds: number;
}

export interface StatementResult {
  result: { name: string | null; schema: ColumnInfo[]; row_count: number };
  plan: string | null;
  metrics: Metrics;
}

export interface StatementError {
  stage: "parse" | "translate" | "plan" | "execute";
  message: string;
  offset?: number;
}

export interface ProvenanceEntry {
  source: string;
  native_query: string;
  call_count: number;
  duration_seconds: number;
  timestamp: number;
  kind: "native" | "workspace";
}

export interface TranslationTrace {
  utterance: string;
  matched_patterns: string[];
  column_bindings: [string, string][];
  residual_terms: string[];
  translator: string;
  tokens_in: number;
  tokens_out: number;
  provider_cost: number;
}

export interface LogEntry {
  statement: string;
  result_name: string | null;
  row_count: number;
  plan: string | null;
  provenance: ProvenanceEntry[];
  metrics: Metrics;
  status: "ok" | "error";
  error: StatementError | null;
  traces: TranslationTrace[];
}

export interface TablePage {
  name: string;
  schema: ColumnInfo[];
  total: number;
  offset: number;
  limit: number;
  rows: unknown[][];
}

export interface TableSummary {
  name: string;
  row_count: number;
  schema: ColumnInfo[];
}

export interface SourceSummary {
  name: string;
  wrapper_kind: string;
  tables: string[];
}

export interface SourceDetail {
  name: string;
  wrapper_kind: string;
  tables: {
    qualified_name: string;
    columns: ColumnInfo[];
    row_estimate: number;
  }[];
}
