import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { importSkeleton } from "../src/skeleton.js";
import { workspaceToSchema } from "../src/workspace.js";
import type { SchemaDoc } from "../src/types.js";

function skeletonSchema(): SchemaDoc {
  // The shape the server returns from POST /skeletons/{id}/instantiate.
  const events = [
    "Life.Infect",
    "Medical.Diagnosis",
    "Medical.Treatment",
    "Life.Recover",
  ];
  return {
    format_version: 1,
    id: "schema-sk9",
    name: "sk9",
    description: "",
    provenance: { kind: "skeleton_fleshed", skeleton_id: "sk9" },
    participants: [],
    steps: events.map((type, i) => ({
      id: `step-${i + 1}`,
      "@type": type,
      description: "",
      fillers: {},
    })),
    relations: [],
    order: [{ kind: "linear", members: ["step-1", "step-2", "step-3", "step-4"] }],
  };
}

function clientReturning(doc: SchemaDoc): ApiClient {
  return new ApiClient("http://x", async () =>
    new Response(JSON.stringify({ schema: doc }), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    }),
  );
}

describe("importSkeleton", () => {
  it("pre-places one event block per skeleton event, in order", async () => {
    const ws = await importSkeleton(clientReturning(skeletonSchema()), "sk9");
    expect(ws.steps.map((s) => s.type)).toEqual([
      "Life.Infect",
      "Medical.Diagnosis",
      "Medical.Treatment",
      "Life.Recover",
    ]);
    expect(ws.steps.every((s) => Object.keys(s.sockets).length === 0)).toBe(true);
    expect(ws.participants).toHaveLength(0);
    expect(ws.dirty).toBe(true);
  });

  it("keeps skeleton provenance so saves are marked skeleton_fleshed", async () => {
    const ws = await importSkeleton(clientReturning(skeletonSchema()), "sk9");
    const doc = workspaceToSchema(ws);
    expect(doc.provenance.kind).toBe("skeleton_fleshed");
    expect(doc.provenance.skeleton_id).toBe("sk9");
  });

  it("round-trips the instantiated document unchanged", async () => {
    const doc = skeletonSchema();
    const ws = await importSkeleton(clientReturning(doc), "sk9");
    expect(workspaceToSchema(ws)).toEqual(doc);
  });
});
