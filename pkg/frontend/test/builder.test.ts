import { describe, expect, it } from "vitest";

import {
  buildStatement,
  emptyForm,
  FormState,
  housekeepingStatement,
  validateForm,
} from "../src/builder.js";

function q2Form(): FormState {
  return {
    source: "WIKIPEDIA",
    table: "WIKIPEDIA.Page",
    columns: [],
    aggregate: { fn: "COUNT", column: "title" },
    utterance: "pages in the category 'University buildings'",
    join: {
      table: "UNIVERSITY_DW.buildings",
      columns: ["name"],
      utterance: "",
      conditionKind: "entity",
      leftColumn: "title",
      rightColumn: "name",
    },
    housekeeping: { action: "none", name: "" },
  };
}

describe("buildStatement", () => {
  it("renders the Q2 motif as a two-block join with an aggregate", () => {
    const form = q2Form();
    expect(validateForm(form).ok).toBe(true);
    expect(buildStatement(form)).toBe(
      "FIND COUNT(title)\n" +
        "FROM WIKIPEDIA.Page\n" +
        "WHERE pages in the category 'University buildings'\n" +
        "JOIN\n" +
        "FIND name\n" +
        "FROM UNIVERSITY_DW.buildings\n" +
        "ON ENTITY title = name",
    );
  });

  it("renders columns-only forms without a WHERE clause", () => {
    const form = { ...emptyForm(), table: "faculty", columns: ["full_name", "title"] };
    expect(buildStatement(form)).toBe("FIND full_name, title\nFROM faculty");
  });

  it("wraps in SAVE when a workspace name is given", () => {
    const form = {
      ...emptyForm(),
      table: "faculty",
      columns: ["full_name"],
      housekeeping: { action: "save" as const, name: "roster" },
    };
    expect(buildStatement(form)).toBe(
      "SAVE (\nFIND full_name\nFROM faculty\n) AS roster",
    );
  });

  it("supports natural and explicit conditions", () => {
    const form = {
      ...emptyForm(),
      table: "projects",
      columns: ["project_name", "room_code"],
      join: {
        table: "rooms",
        columns: ["room_code", "building_name"],
        utterance: "",
        conditionKind: "natural" as const,
        leftColumn: "",
        rightColumn: "",
      },
    };
    expect(buildStatement(form)).not.toContain("ON");
    form.join.conditionKind = "explicit" as never;
    form.join.leftColumn = "room_code";
    form.join.rightColumn = "room_code";
    expect(buildStatement(form)).toContain("ON room_code = room_code");
  });

  it("emits housekeeping statements for existing tables", () => {
    expect(housekeepingStatement("output", "roster")).toBe("OUTPUT roster");
    expect(housekeepingStatement("output", "roster", "out.tbl")).toBe(
      "OUTPUT roster TO 'out.tbl'",
    );
    expect(housekeepingStatement("delete", "roster")).toBe("DELETE roster");
  });
});

describe("validateForm", () => {
  it("requires a table and at least one column", () => {
    const verdict = validateForm(emptyForm());
    expect(verdict.ok).toBe(false);
    expect(verdict.problems.join(" ")).toMatch(/table/);
    expect(verdict.problems.join(" ")).toMatch(/column/);
  });

  it("rejects a join block without a base block", () => {
    const form = emptyForm();
    form.join = {
      table: "rooms", columns: ["room_code"], utterance: "",
      conditionKind: "natural", leftColumn: "", rightColumn: "",
    };
    const verdict = validateForm(form);
    expect(verdict.ok).toBe(false);
    expect(verdict.problems.join(" ")).toMatch(/base block/);
  });

  it("rejects utterances that would terminate early", () => {
    const form = { ...emptyForm(), table: "t", columns: ["a"] };
    expect(validateForm({ ...form, utterance: "worked on in the lab" }).ok).toBe(false);
    expect(validateForm({ ...form, utterance: "papers about 'worked on'" }).ok).toBe(true);
    expect(validateForm({ ...form, utterance: "half a quote '" }).ok).toBe(false);
    expect(validateForm({ ...form, utterance: "a; b" }).ok).toBe(false);
  });

  it("rejects keyword-shaped table names but allows keyword columns", () => {
    const bad = { ...emptyForm(), table: "join", columns: ["a"] };
    expect(validateForm(bad).ok).toBe(false);
    const ok = { ...emptyForm(), table: "EMAIL.Message", columns: ["from", "to"] };
    expect(validateForm(ok).ok).toBe(true);
  });

  it("requires condition columns for non-natural joins", () => {
    const form = q2Form();
    form.join!.leftColumn = "";
    expect(validateForm(form).ok).toBe(false);
  });
});
