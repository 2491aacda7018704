/**
 * Form-based statement builder.
 *
 * Form fields map one-to-one onto statement slots (projection list, table,
 * predicate utterance, optional second block with a join condition), so any
 * valid form state renders to text the server's parser accepts. Validation
 * happens here, inline, before anything is submitted.
 */

export type AggregateFunction = "COUNT" | "SUM" | "AVG" | "MIN" | "MAX";

export interface JoinBlockState {
  table: string;
  columns: string[];
  utterance: string;
  /** join condition; "natural" needs no columns */
  conditionKind: "natural" | "explicit" | "entity";
  leftColumn: string;
  rightColumn: string;
}

export interface HousekeepingState {
  action: "none" | "save" | "output" | "delete";
  name: string;
}

export interface FormState {
  source: string;
  table: string;
  columns: string[];
  aggregate: { fn: AggregateFunction; column: string } | null;
  utterance: string;
  join: JoinBlockState | null;
  housekeeping: HousekeepingState;
}

export function emptyForm(): FormState {
  return {
    source: "",
    table: "",
    columns: [],
    aggregate: null,
    utterance: "",
    join: null,
    housekeeping: { action: "none", name: "" },
  };
}

const IDENT = /^[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*$/;
// keyword-shaped names are fine in column slots; tables must not collide
const TABLE_KEYWORDS = new Set([
  "FIND", "FROM", "WHERE", "JOIN", "ON", "SAVE", "AS", "OUTPUT", "DELETE",
]);

function validIdent(name: string, asTable: boolean): boolean {
  if (!IDENT.test(name)) return false;
  if (asTable && TABLE_KEYWORDS.has(name.toUpperCase())) return false;
  return true;
}

/**
 * An utterance runs to the next top-level JOIN/ON keyword, ';', or a
 * closing parenthesis, so those must be quoted to survive the round trip.
 */
function utteranceSafe(utterance: string): boolean {
  let quote: string | null = null;
  const words = [] as string[];
  let current = "";
  for (const ch of utterance) {
    if (quote !== null) {
      if (ch === quote) quote = null;
      continue;
    }
    if (ch === "'" || ch === '"') {
      quote = ch;
      continue;
    }
    if (ch === ";" || ch === "(" || ch === ")") return false;
    if (/[A-Za-z0-9_]/.test(ch)) {
      current += ch;
    } else if (current) {
      words.push(current);
      current = "";
    }
  }
  if (current) words.push(current);
  if (quote !== null) return false; // unbalanced quote
  return !words.some((w) => {
    const u = w.toUpperCase();
    return u === "JOIN" || u === "ON";
  });
}

export interface Validation {
  ok: boolean;
  problems: string[];
}

export function validateForm(form: FormState): Validation {
  const problems: string[] = [];
  if (!form.table) problems.push("pick a table");
  else if (!validIdent(form.table, true)) problems.push(`invalid table name '${form.table}'`);
  if (form.aggregate === null && form.columns.length === 0) {
    problems.push("check at least one column (or pick an aggregate)");
  }
  for (const col of form.columns) {
    if (!validIdent(col, false)) problems.push(`invalid column name '${col}'`);
  }
  if (form.aggregate && form.aggregate.column !== "*" && !validIdent(form.aggregate.column, false)) {
    problems.push("aggregate needs a column");
  }
  if (form.utterance.trim() && !utteranceSafe(form.utterance)) {
    problems.push("predicate text cannot contain bare join/on words, ';' or parentheses — quote them");
  }
  const join = form.join;
  if (join) {
    if (!form.table) problems.push("a join block requires a base block");
    if (!join.table) problems.push("pick the second table");
    else if (!validIdent(join.table, true)) problems.push(`invalid table name '${join.table}'`);
    if (join.columns.length === 0) problems.push("check at least one column on the joined table");
    if (join.utterance.trim() && !utteranceSafe(join.utterance)) {
      problems.push("joined predicate text cannot contain bare join/on words, ';' or parentheses");
    }
    if (join.conditionKind !== "natural") {
      if (!validIdent(join.leftColumn, false) || !validIdent(join.rightColumn, false)) {
        problems.push("explicit and entity joins need both condition columns");
      }
    }
  }
  const house = form.housekeeping;
  if (house.action === "save" && !validIdent(house.name, true)) {
    problems.push("SAVE needs a valid new table name");
  }
  return { ok: problems.length === 0, problems };
}

function blockText(table: string, columns: string[], aggregate: FormState["aggregate"], utterance: string): string {
  const projection = aggregate
    ? `${aggregate.fn}(${aggregate.column})`
    : columns.join(", ");
  const lines = [`FIND ${projection}`, `FROM ${table}`];
  if (utterance.trim()) lines.push(`WHERE ${utterance.trim()}`);
  return lines.join("\n");
}

/** Render the form into AQL text; call validateForm first. */
export function buildStatement(form: FormState): string {
  const base = blockText(form.table, form.columns, form.aggregate, form.utterance);
  let query = base;
  if (form.join) {
    const join = form.join;
    query += "\nJOIN\n" + blockText(join.table, join.columns, null, join.utterance);
    if (join.conditionKind === "explicit") {
      query += `\nON ${join.leftColumn} = ${join.rightColumn}`;
    } else if (join.conditionKind === "entity") {
      query += `\nON ENTITY ${join.leftColumn} = ${join.rightColumn}`;
    }
  }
  const house = form.housekeeping;
  if (house.action === "save") {
    return `SAVE (\n${query}\n) AS ${house.name}`;
  }
  return query;
}

/** Housekeeping statements for existing workspace tables. */
export function housekeepingStatement(action: "output" | "delete", table: string, destination?: string): string {
  if (action === "output") {
    return destination ? `OUTPUT ${table} TO '${destination}'` : `OUTPUT ${table}`;
  }
  return `DELETE ${table}`;
}
