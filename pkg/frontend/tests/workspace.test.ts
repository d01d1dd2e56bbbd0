import { readFileSync, readdirSync } from "node:fs";
import { resolve } from "node:path";
import { describe, expect, it } from "vitest";

import type { SchemaDoc } from "../src/types.js";
import {
  addStep,
  emptyWorkspace,
  plugParticipant,
  schemaToWorkspace,
  workspaceToSchema,
} from "../src/workspace.js";

const SCHEMA_DIR = resolve(__dirname, "..", "..", "fixtures", "schemas");

function loadSchema(name: string): SchemaDoc {
  return JSON.parse(readFileSync(resolve(SCHEMA_DIR, name), "utf-8"));
}

describe("workspace round trip", () => {
  it("reproduces every fixture schema document exactly", () => {
    for (const file of readdirSync(SCHEMA_DIR)) {
      const doc = loadSchema(file);
      expect(workspaceToSchema(schemaToWorkspace(doc))).toEqual(doc);
    }
  });

  it("preserves exclusive branches and multi-filler sockets", () => {
    const doc = loadSchema("cook_meal.json");
    const ws = schemaToWorkspace(doc);
    const exclusive = ws.orders.filter((o) => o.kind === "exclusive_group");
    expect(exclusive).toHaveLength(1);
    expect(exclusive[0].members).toEqual(["serve_meal", "deliver_meal"]);
    const prepare = ws.steps.find((s) => s.id === "prepare_meal")!;
    expect(prepare.sockets["Instrument"]).toEqual(["cooking_tools", "sink"]);
    const roundTripped = workspaceToSchema(ws);
    expect(roundTripped.order).toEqual(doc.order);
    expect(
      roundTripped.steps.find((s) => s.id === "prepare_meal")!.fillers,
    ).toEqual(doc.steps.find((s) => s.id === "prepare_meal")!.fillers);
  });

  it("keeps provenance (including the skeleton pointer) intact", () => {
    const doc = loadSchema("cook_meal.json");
    const out = workspaceToSchema(schemaToWorkspace(doc));
    expect(out.provenance).toEqual(doc.provenance);
  });

  it("is idempotent across repeated conversions", () => {
    const doc = loadSchema("remote_teaching.json");
    const once = workspaceToSchema(schemaToWorkspace(doc));
    const twice = workspaceToSchema(schemaToWorkspace(once));
    expect(twice).toEqual(once);
  });
});

describe("editing", () => {
  it("an empty workspace exports a minimal (invalid) schema document", () => {
    const doc = workspaceToSchema(emptyWorkspace("draft-1"));
    expect(doc.steps).toHaveLength(0); // the server will flag this as an error
    expect(doc.id).toBe("draft-1");
  });

  it("edits mark the workspace dirty", () => {
    const ws = emptyWorkspace();
    expect(ws.dirty).toBe(false);
    addStep(ws, { id: "s1", type: "T.A", description: "", sockets: {} });
    expect(ws.dirty).toBe(true);
    plugParticipant(ws, "s1", "Agent", "p1");
    expect(ws.steps[0].sockets["Agent"]).toEqual(["p1"]);
  });

  it("rejects plugging into an unknown step", () => {
    const ws = emptyWorkspace();
    expect(() => plugParticipant(ws, "nope", "Agent", "p1")).toThrow();
  });
});
