/** Typed client over the session HTTP API (docs/api.md). */

import type {
  LogEntry,
  SessionInfo,
  SourceDetail,
  SourceSummary,
  StatementError,
  StatementResult,
  TablePage,
  TableSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class StatementRejected extends Error {
  constructor(public error: StatementError) {
    super(`${error.stage}: ${error.message}`);
  }
}

export class Client {
  constructor(private baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const payload = await resp.json().catch(() => ({}));
    if (resp.status === 422 && payload && typeof payload === "object" && "error" in payload) {
      throw new StatementRejected((payload as { error: StatementError }).error);
    }
    if (!resp.ok) {
      const detail =
        payload && typeof payload === "object" && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : resp.statusText;
      throw new ApiError(resp.status, detail);
    }
    return payload as T;
  }

  createSession(principal = "analyst"): Promise<SessionInfo> {
    return this.request("POST", "/sessions", { principal });
  }

  submitStatement(sessionId: string, text: string): Promise<StatementResult> {
    return this.request("POST", `/sessions/${sessionId}/statements`, { text });
  }

  listTables(sessionId: string): Promise<{ tables: TableSummary[] }> {
    return this.request("GET", `/sessions/${sessionId}/tables`);
  }

  tablePage(sessionId: string, name: string, offset: number, limit: number): Promise<TablePage> {
    return this.request(
      "GET",
      `/sessions/${sessionId}/tables/${encodeURIComponent(name)}?offset=${offset}&limit=${limit}`,
    );
  }

  sessionLog(sessionId: string): Promise<{ log: LogEntry[] }> {
    return this.request("GET", `/sessions/${sessionId}/log`);
  }

  catalogSources(): Promise<{ sources: SourceSummary[] }> {
    return this.request("GET", "/catalog/sources");
  }

  catalogSource(name: string): Promise<SourceDetail> {
    return this.request("GET", `/catalog/sources/${encodeURIComponent(name)}`);
  }
}
