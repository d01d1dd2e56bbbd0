/** Integration smoke against a running schemakit server. Skipped unless
 * SCHEMAKIT_SERVER_URL is set, e.g.:
 *
 *   schemakit --ontology fixtures/ontology.json --library /tmp/lib serve &
 *   SCHEMAKIT_SERVER_URL=http://127.0.0.1:8321 npx vitest run tests/live_server.test.ts
 */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { paletteFromOntology } from "../src/palette.js";
import type { SchemaDoc } from "../src/types.js";

const SERVER = process.env.SCHEMAKIT_SERVER_URL;

describe.skipIf(!SERVER)("live server", () => {
  const client = new ApiClient(SERVER ?? "");

  it("builds the palette from the served ontology", async () => {
    const palette = paletteFromOntology(await client.getOntology());
    expect(palette.eventCount).toBeGreaterThan(0);
  });

  it("highlights a seeded type conflict and clears it once fixed", async () => {
    const { LiveValidator } = await import("../src/validation.js");
    const { schemaToWorkspace } = await import("../src/workspace.js");
    const { schema } = await client.getSchema("cook_meal");
    const ws = schemaToWorkspace(schema);
    // Seed a conflict: the person-typed cook plugged into the vehicle socket.
    const serve = ws.steps.find((s) => s.id === "serve_meal")!;
    serve.sockets["Vehicle"] = ["cook"];
    const validator = new LiveValidator((doc) => client.validate(doc), 0);
    await validator.run(ws);
    expect(validator.highlights.has("serve_meal")).toBe(true);
    // Fix it and watch the highlight clear.
    delete serve.sockets["Vehicle"];
    await validator.run(ws);
    expect(validator.highlights.has("serve_meal")).toBe(false);
    expect(ws.lastReport?.ok).toBe(true);
  });

  it("p95 validate round-trip under 100 ms for a 10-step schema", async () => {
    const ontology = await client.getOntology();
    const steps = ontology.events.slice(0, 10).map((event, i) => ({
      id: `s${i}`,
      "@type": event.id,
      description: `step ${i}`,
      fillers: {},
    }));
    const doc: SchemaDoc = {
      format_version: 1,
      id: "latency-probe",
      name: "Latency probe",
      description: "",
      provenance: { kind: "manual" },
      participants: [],
      steps,
      relations: [],
      order: [],
    };
    await client.validate(doc); // warm up
    const samples: number[] = [];
    for (let i = 0; i < 40; i++) {
      const start = performance.now();
      const report = await client.validate(doc);
      samples.push(performance.now() - start);
      expect(report.ok).toBe(true);
    }
    samples.sort((a, b) => a - b);
    const p95 = samples[Math.ceil(samples.length * 0.95) - 1];
    expect(p95).toBeLessThan(100);
  });
});
