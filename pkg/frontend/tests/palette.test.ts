import { readFileSync } from "node:fs";
import { resolve } from "node:path";
import { describe, expect, it } from "vitest";

import {
  eventsUnder,
  findCategory,
  paletteFromOntology,
} from "../src/palette.js";
import type { OntologyDoc } from "../src/types.js";

const FIXTURES = resolve(__dirname, "..", "..", "fixtures");

function loadOntology(): OntologyDoc {
  return JSON.parse(readFileSync(resolve(FIXTURES, "ontology.json"), "utf-8"));
}

describe("paletteFromOntology", () => {
  it("covers every ontology definition", () => {
    const palette = paletteFromOntology(loadOntology());
    expect(palette.eventCount).toBe(67);
    expect(palette.entityTypes).toHaveLength(24);
    expect(palette.relations).toHaveLength(46);
    expect(palette.orderBlocks.map((b) => b.ordering)).toEqual([
      "linear",
      "unordered_group",
      "exclusive_group",
    ]);
  });

  it("expands the Medical category to its fixture subtypes", () => {
    const palette = paletteFromOntology(loadOntology());
    const medical = findCategory(palette, "Medical");
    expect(medical).toBeDefined();
    expect(medical!.events.map((e) => e.type)).toEqual([
      "Medical.Diagnosis",
      "Medical.Intervention",
      "Medical.Treatment",
      "Medical.Vaccinate",
      "Medical.Quarantine",
      "Medical.Hospitalization",
    ]);
  });

  it("nests subcategories and aggregates their events", () => {
    const palette = paletteFromOntology(loadOntology());
    const movement = findCategory(palette, "Movement");
    expect(movement).toBeDefined();
    expect(movement!.events).toHaveLength(0);
    expect(movement!.children.map((c) => c.id)).toEqual([
      "Movement.Transportation",
    ]);
    expect(eventsUnder(movement!)).toHaveLength(4);
  });

  it("has no empty category nodes", () => {
    const palette = paletteFromOntology(loadOntology());
    const stack = [...palette.categories];
    while (stack.length) {
      const node = stack.pop()!;
      expect(node.events.length + node.children.length).toBeGreaterThan(0);
      stack.push(...node.children);
    }
  });

  it("keeps role sockets with their type constraints", () => {
    const palette = paletteFromOntology(loadOntology());
    const medical = findCategory(palette, "Medical")!;
    const vaccinate = medical.events.find((e) => e.type === "Medical.Vaccinate")!;
    const patient = vaccinate.sockets.find((s) => s.name === "Patient")!;
    expect(patient.allowedTypes).toContain("per");
    expect(patient.max).toBeNull();
  });

  it("is a pure function of the document", () => {
    const doc = loadOntology();
    expect(paletteFromOntology(doc)).toEqual(paletteFromOntology(doc));
  });

  it("matches the golden structure for a miniature ontology", () => {
    const mini: OntologyDoc = {
      format_version: 1,
      entities: [{ id: "per", label: "Person" }],
      events: [
        {
          id: "T.A",
          category: ["T"],
          label: "A",
          roles: [{ name: "Agent", types: ["per"], min: 0, max: null }],
        },
      ],
      relations: [],
    };
    expect(paletteFromOntology(mini)).toEqual({
      categories: [
        {
          id: "T",
          children: [],
          events: [
            {
              kind: "event",
              type: "T.A",
              label: "A",
              sockets: [
                { name: "Agent", allowedTypes: ["per"], min: 0, max: null },
              ],
            },
          ],
        },
      ],
      relations: [],
      orderBlocks: [
        { kind: "order", ordering: "linear", label: "in order" },
        { kind: "order", ordering: "unordered_group", label: "in any order" },
        { kind: "order", ordering: "exclusive_group", label: "one of" },
      ],
      entityTypes: ["per"],
      eventCount: 1,
    });
  });
});
