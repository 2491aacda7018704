/**
 * Workbench wiring: form builder on the left, session timeline in the
 * middle, inspector (rows / plan / translation trace via plan text /
 * source-call chart) on the right. The timeline polls the server log once
 * a second; every displayed row comes from a server table fetch.
 */

import { Client, StatementRejected } from "./api.js";
import {
  AggregateFunction,
  buildStatement,
  emptyForm,
  FormState,
  validateForm,
} from "./builder.js";
import { pageInfo } from "./pagination.js";
import { sourceComposition, toTimeline, traceReport } from "./timeline.js";
import type { LogEntry, SourceDetail, TablePage } from "./types.js";

const PAGE_SIZE = 100;
const POLL_MS = 1000;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else node.setAttribute(k, v);
  }
  node.append(...children);
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class Workbench {
  client: Client;
  sessionId = "";
  form: FormState = emptyForm();
  sources = new Map<string, SourceDetail>();
  rawMode = false;
  selectedEntry: number | null = null;
  page = 0;
  log: LogEntry[] = [];

  constructor(baseUrl: string) {
    this.client = new Client(baseUrl);
  }

  async start(): Promise<void> {
    const session = await this.client.createSession("workbench");
    this.sessionId = session.session_id;
    byId<HTMLSpanElement>("session-label").textContent =
      `session ${this.sessionId.slice(0, 8)} (${session.principal})`;
    const listing = await this.client.catalogSources();
    for (const src of listing.sources) {
      this.sources.set(src.name, await this.client.catalogSource(src.name));
    }
    this.renderForm();
    this.bind();
    window.setInterval(() => void this.refreshTimeline(), POLL_MS);
    await this.refreshTimeline();
  }

  bind(): void {
    byId<HTMLButtonElement>("submit").addEventListener("click", () => void this.submit());
    byId<HTMLButtonElement>("toggle-raw").addEventListener("click", () => {
      this.rawMode = !this.rawMode;
      byId("form-pane").classList.toggle("hidden", this.rawMode);
      byId("raw-pane").classList.toggle("hidden", !this.rawMode);
      if (!this.rawMode) this.renderPreview();
      byId<HTMLButtonElement>("toggle-raw").textContent = this.rawMode
        ? "form mode"
        : "raw AQL mode";
    });
    byId<HTMLTextAreaElement>("raw-text").addEventListener("input", () => {
      byId<HTMLPreElement>("preview").textContent =
        byId<HTMLTextAreaElement>("raw-text").value;
    });
  }

  statementText(): string {
    if (this.rawMode) return byId<HTMLTextAreaElement>("raw-text").value;
    return buildStatement(this.form);
  }

  async submit(): Promise<void> {
    const note = byId<HTMLDivElement>("submit-note");
    if (!this.rawMode) {
      const verdict = validateForm(this.form);
      if (!verdict.ok) {
        note.textContent = verdict.problems.join("; ");
        return;
      }
    }
    note.textContent = "";
    try {
      const outcome = await this.client.submitStatement(this.sessionId, this.statementText());
      note.textContent = `ok: ${outcome.result.name ?? "(no table)"} — ` +
        `${outcome.result.row_count} rows, k=${outcome.metrics.tool_calls}`;
    } catch (err) {
      if (err instanceof StatementRejected) {
        note.textContent = `${err.error.stage} error: ${err.error.message}`;
      } else {
        note.textContent = String(err);
      }
    }
    await this.refreshTimeline();
  }

  // --- form ----------------------------------------------------------------

  renderForm(): void {
    const sourceSel = byId<HTMLSelectElement>("source");
    sourceSel.replaceChildren(
      el("option", { value: "" }, "— source —"),
      ...[...this.sources.keys()].map((name) => el("option", { value: name }, name)),
    );
    sourceSel.onchange = () => {
      this.form.source = sourceSel.value;
      this.form.table = "";
      this.form.columns = [];
      this.renderTables();
      this.renderPreview();
    };
    this.renderTables();
    const utterance = byId<HTMLInputElement>("utterance");
    utterance.oninput = () => {
      this.form.utterance = utterance.value;
      this.renderPreview();
    };
    const saveName = byId<HTMLInputElement>("save-name");
    saveName.oninput = () => {
      this.form.housekeeping =
        saveName.value.trim().length > 0
          ? { action: "save", name: saveName.value.trim() }
          : { action: "none", name: "" };
      this.renderPreview();
    };
    const joinToggle = byId<HTMLInputElement>("join-toggle");
    joinToggle.onchange = () => {
      this.form.join = joinToggle.checked
        ? {
            table: "",
            columns: [],
            utterance: "",
            conditionKind: "natural",
            leftColumn: "",
            rightColumn: "",
          }
        : null;
      byId("join-pane").classList.toggle("hidden", !joinToggle.checked);
      this.renderJoinPane();
      this.renderPreview();
    };
    this.renderPreview();
  }

  tablesOf(source: string): SourceDetail["tables"] {
    return this.sources.get(source)?.tables ?? [];
  }

  renderTables(): void {
    const tableSel = byId<HTMLSelectElement>("table");
    tableSel.replaceChildren(
      el("option", { value: "" }, "— table —"),
      ...this.tablesOf(this.form.source).map((t) =>
        el("option", { value: t.qualified_name }, t.qualified_name),
      ),
    );
    tableSel.onchange = () => {
      this.form.table = tableSel.value;
      this.form.columns = [];
      this.renderColumns();
      this.renderPreview();
    };
    this.renderColumns();
  }

  renderColumns(): void {
    const pane = byId<HTMLDivElement>("columns");
    pane.replaceChildren();
    const table = this.tablesOf(this.form.source).find(
      (t) => t.qualified_name === this.form.table,
    );
    const aggSel = byId<HTMLSelectElement>("aggregate");
    const aggCol = byId<HTMLSelectElement>("aggregate-column");
    aggCol.replaceChildren(el("option", { value: "" }, "—"));
    if (!table) return;
    for (const col of table.columns) {
      const box = el("input", { type: "checkbox", id: `col-${col.name}` }) as HTMLInputElement;
      box.onchange = () => {
        this.form.columns = box.checked
          ? [...this.form.columns, col.name]
          : this.form.columns.filter((c) => c !== col.name);
        this.renderPreview();
      };
      pane.append(
        el("label", { class: "col-box" }, box, ` ${col.name} `,
           el("span", { class: "muted" }, col.type)),
      );
      aggCol.append(el("option", { value: col.name }, col.name));
    }
    aggSel.onchange = aggCol.onchange = () => {
      this.form.aggregate =
        aggSel.value && aggCol.value
          ? { fn: aggSel.value as AggregateFunction, column: aggCol.value }
          : null;
      this.renderPreview();
    };
  }

  renderJoinPane(): void {
    if (!this.form.join) return;
    const join = this.form.join;
    const tableSel = byId<HTMLSelectElement>("join-table");
    const all = [...this.sources.values()].flatMap((s) => s.tables);
    tableSel.replaceChildren(
      el("option", { value: "" }, "— table —"),
      ...all.map((t) => el("option", { value: t.qualified_name }, t.qualified_name)),
    );
    tableSel.onchange = () => {
      join.table = tableSel.value;
      join.columns = [];
      const pane = byId<HTMLDivElement>("join-columns");
      pane.replaceChildren();
      const table = all.find((t) => t.qualified_name === join.table);
      for (const col of table?.columns ?? []) {
        const box = el("input", { type: "checkbox" }) as HTMLInputElement;
        box.onchange = () => {
          join.columns = box.checked
            ? [...join.columns, col.name]
            : join.columns.filter((c) => c !== col.name);
          this.renderPreview();
        };
        pane.append(el("label", { class: "col-box" }, box, ` ${col.name}`));
      }
      this.renderPreview();
    };
    const utterance = byId<HTMLInputElement>("join-utterance");
    utterance.oninput = () => {
      join.utterance = utterance.value;
      this.renderPreview();
    };
    const kind = byId<HTMLSelectElement>("join-kind");
    const left = byId<HTMLInputElement>("join-left");
    const right = byId<HTMLInputElement>("join-right");
    const update = () => {
      join.conditionKind = kind.value as "natural" | "explicit" | "entity";
      join.leftColumn = left.value;
      join.rightColumn = right.value;
      byId("join-cond-cols").classList.toggle("hidden", join.conditionKind === "natural");
      this.renderPreview();
    };
    kind.onchange = update;
    left.oninput = update;
    right.oninput = update;
  }

  renderPreview(): void {
    const verdict = validateForm(this.form);
    const preview = byId<HTMLPreElement>("preview");
    const problems = byId<HTMLDivElement>("problems");
    const submit = byId<HTMLButtonElement>("submit");
    preview.textContent = verdict.ok ? buildStatement(this.form) : "";
    problems.textContent = verdict.problems.join("; ");
    if (!this.rawMode) submit.disabled = !verdict.ok;
  }

  // --- timeline and inspector -------------------------------------------------

  async refreshTimeline(): Promise<void> {
    const body = await this.client.sessionLog(this.sessionId);
    const changed = JSON.stringify(body.log) !== JSON.stringify(this.log);
    this.log = body.log;
    if (!changed) return;
    const list = byId<HTMLUListElement>("timeline");
    list.replaceChildren(
      ...toTimeline(this.log).map((entry) => {
        const badge =
          entry.status === "ok"
            ? el("span", { class: "badge ok" }, `k=${entry.toolCalls}`)
            : el("span", { class: "badge err" }, entry.errorStage ?? "error");
        const item = el(
          "li",
          { class: "timeline-entry" },
          badge,
          el("code", {}, entry.statement.split("\n")[0].slice(0, 60)),
          el(
            "span",
            { class: "muted" },
            entry.status === "ok"
              ? ` ${entry.resultName ?? ""} · ${entry.rowCount} rows · ${(entry.ttftSeconds * 1000).toFixed(1)} ms`
              : ` ${entry.errorMessage ?? ""}`,
          ),
        );
        item.onclick = () => void this.select(entry.index);
        return item;
      }),
    );
    this.renderChart();
    if (this.log.length === 0) {
      list.replaceChildren(el("li", { class: "muted" }, "no statements yet"));
    }
  }

  async select(index: number): Promise<void> {
    this.selectedEntry = index;
    this.page = 0;
    const entry = this.log[index];
    byId<HTMLPreElement>("plan").textContent = entry.plan ?? "(no plan)";
    byId<HTMLPreElement>("traces").textContent = traceReport(entry.traces ?? []);
    await this.renderRows();
  }

  async renderRows(): Promise<void> {
    const pane = byId<HTMLDivElement>("rows");
    if (this.selectedEntry === null) return;
    const entry = this.log[this.selectedEntry];
    if (entry.status !== "ok" || !entry.result_name) {
      pane.replaceChildren(el("div", { class: "muted" }, "no result table"));
      return;
    }
    let page: TablePage;
    try {
      const info = pageInfo(entry.row_count, PAGE_SIZE, this.page);
      page = await this.client.tablePage(
        this.sessionId, entry.result_name, info.offset, info.limit,
      );
    } catch (err) {
      pane.replaceChildren(el("div", { class: "muted" }, String(err)));
      return;
    }
    const head = el(
      "tr", {},
      ...page.schema.map((c) => el("th", {}, `${c.name} `, el("span", { class: "muted" }, c.type))),
    );
    const rows = page.rows.map((row) =>
      el("tr", {}, ...row.map((v) => el("td", {}, v === null ? "∅" : String(v)))),
    );
    const info = pageInfo(page.total, PAGE_SIZE, this.page);
    const prev = el("button", {}, "prev") as HTMLButtonElement;
    const next = el("button", {}, "next") as HTMLButtonElement;
    prev.disabled = !info.hasPrev;
    next.disabled = !info.hasNext;
    prev.onclick = () => { this.page -= 1; void this.renderRows(); };
    next.onclick = () => { this.page += 1; void this.renderRows(); };
    pane.replaceChildren(
      el("div", { class: "pager" },
         prev, ` page ${info.page + 1} / ${info.pageCount} (${page.total} rows) `, next),
      el("table", { class: "grid" }, head, ...rows),
    );
  }

  renderChart(): void {
    const pane = byId<HTMLDivElement>("chart");
    const composition = sourceComposition(this.log);
    const max = Math.max(1, ...composition.values());
    pane.replaceChildren(
      ...[...composition.entries()].sort().map(([source, calls]) =>
        el(
          "div", { class: "bar-row" },
          el("span", { class: "bar-label" }, source),
          el("div", { class: "bar", style: `width: ${(calls / max) * 100}%` }),
          el("span", { class: "bar-count" }, String(calls)),
        ),
      ),
    );
    if (composition.size === 0) {
      pane.replaceChildren(el("div", { class: "muted" }, "no native calls yet"));
    }
  }
}

const base = new URLSearchParams(window.location.search).get("server") ??
  `${window.location.protocol}//${window.location.host}`;
void new Workbench(base).start();
