import { describe, expect, it } from "vitest";

import {
  ApiClient,
  ValidationRejectedError,
  VersionConflictError,
  saveWorkspace,
} from "../src/api.js";
import { emptyWorkspace, schemaToWorkspace } from "../src/workspace.js";
import type { SchemaDoc } from "../src/types.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function fakeFetch(
  handler: (url: string, init?: RequestInit) => Response,
  log: Recorded[] = [],
) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    log.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    return handler(url, init);
  };
}

function minimalSchema(id = "s1"): SchemaDoc {
  return {
    format_version: 1,
    id,
    name: "S",
    description: "",
    provenance: { kind: "manual" },
    participants: [],
    steps: [{ id: "st", "@type": "T.A", description: "d", fillers: {} }],
    relations: [],
    order: [],
  };
}

describe("ApiClient", () => {
  it("puts a schema with its version and returns the new one", async () => {
    const log: Recorded[] = [];
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { id: "s1", version: 2 }), log),
    );
    const result = await client.putSchema(minimalSchema(), 1);
    expect(result.version).toBe(2);
    expect(log[0].url).toBe("http://x/schemas/s1?version=1");
    expect(log[0].method).toBe("PUT");
  });

  it("raises VersionConflictError on 409", async () => {
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(409, { detail: "stale version" })),
    );
    await expect(client.putSchema(minimalSchema(), 1)).rejects.toBeInstanceOf(
      VersionConflictError,
    );
  });

  it("raises ValidationRejectedError with the report on 422", async () => {
    const report = {
      ok: false,
      issues: [{ severity: "error", location: "st", message: "bad" }],
    };
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(422, { detail: report })),
    );
    const error = await client.putSchema(minimalSchema(), 1).catch((e) => e);
    expect(error).toBeInstanceOf(ValidationRejectedError);
    expect((error as ValidationRejectedError).report).toEqual(report);
  });

  it("unwraps the schema from skeleton instantiation", async () => {
    const doc = minimalSchema("schema-sk1");
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { schema: doc })),
    );
    expect(await client.instantiateSkeleton("sk1")).toEqual(doc);
  });
});

describe("saveWorkspace", () => {
  it("refuses to persist a schema with validation errors without the draft flag", async () => {
    const log: Recorded[] = [];
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { id: "s1", version: 1 }), log),
    );
    const ws = schemaToWorkspace(minimalSchema(), null);
    ws.lastReport = {
      ok: false,
      issues: [{ severity: "error", location: "st", message: "bad" }],
    };
    await expect(saveWorkspace(client, ws)).rejects.toBeInstanceOf(
      ValidationRejectedError,
    );
    expect(log).toHaveLength(0); // no network call at all
  });

  it("draft override saves and flags provenance", async () => {
    const log: Recorded[] = [];
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { id: "s1", version: 1 }), log),
    );
    const ws = schemaToWorkspace(minimalSchema(), null);
    ws.lastReport = {
      ok: false,
      issues: [{ severity: "error", location: "st", message: "bad" }],
    };
    const version = await saveWorkspace(client, ws, { draft: true });
    expect(version).toBe(1);
    expect(log[0].url).toContain("draft=true");
    expect((log[0].body as SchemaDoc).provenance.draft).toBe(true);
    expect(ws.dirty).toBe(false);
  });

  it("clean saves bump the tracked base version", async () => {
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { id: "s1", version: 4 })),
    );
    const ws = schemaToWorkspace(minimalSchema(), 3);
    ws.lastReport = { ok: true, issues: [] };
    await saveWorkspace(client, ws);
    expect(ws.baseVersion).toBe(4);
  });

  it("unvalidated workspaces may save (the server still validates)", async () => {
    const client = new ApiClient(
      "http://x",
      fakeFetch(() => jsonResponse(200, { id: "untitled", version: 1 })),
    );
    const ws = emptyWorkspace();
    ws.steps.push({ id: "st", type: "T.A", description: "d", sockets: {} });
    await expect(saveWorkspace(client, ws)).resolves.toBe(1);
  });
});
