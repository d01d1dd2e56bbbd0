import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { LiveValidator, errorHighlights } from "../src/validation.js";
import type { SchemaDoc, ValidationReport } from "../src/types.js";
import { emptyWorkspace, addStep } from "../src/workspace.js";

function reportWith(...locations: string[]): ValidationReport {
  return {
    ok: locations.length === 0,
    issues: locations.map((location) => ({
      severity: "error" as const,
      location,
      message: `problem at ${location}`,
    })),
  };
}

describe("errorHighlights", () => {
  it("collects error locations and ignores warnings", () => {
    const report: ValidationReport = {
      ok: false,
      issues: [
        { severity: "error", location: "s1", message: "bad type" },
        { severity: "warning", location: "s2", message: "no description" },
      ],
    };
    expect(errorHighlights(report)).toEqual(new Set(["s1"]));
  });
});

describe("LiveValidator", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces: rapid edits produce one request", async () => {
    const calls: SchemaDoc[] = [];
    const validator = new LiveValidator(async (doc) => {
      calls.push(doc);
      return reportWith();
    }, 250);
    const ws = emptyWorkspace();
    for (let i = 0; i < 5; i++) {
      addStep(ws, { id: `s${i}`, type: "T.A", description: "", sockets: {} });
      validator.schedule(ws);
      vi.advanceTimersByTime(100); // always within the quiet period
    }
    expect(calls).toHaveLength(0);
    vi.advanceTimersByTime(300);
    await validator.settle();
    expect(calls).toHaveLength(1);
    expect(calls[0].steps).toHaveLength(5);
  });

  it("highlights the reported block and clears once fixed", async () => {
    let nextReport = reportWith("s1");
    const validator = new LiveValidator(async () => nextReport, 0);
    const ws = emptyWorkspace();
    addStep(ws, { id: "s1", type: "T.A", description: "", sockets: {} });

    await validator.run(ws);
    expect(validator.highlights.has("s1")).toBe(true);
    expect(ws.lastReport?.ok).toBe(false);

    nextReport = reportWith(); // the conflict was fixed
    await validator.run(ws);
    expect(validator.highlights.size).toBe(0);
    expect(ws.lastReport?.ok).toBe(true);
  });

  it("notifies listeners with each report", async () => {
    const seen: boolean[] = [];
    const validator = new LiveValidator(async () => reportWith("s1"), 0);
    validator.onReport((report) => seen.push(report.ok));
    const ws = emptyWorkspace();
    await validator.run(ws);
    expect(seen).toEqual([false]);
  });

  it("drops stale responses when a newer validation supersedes them", async () => {
    vi.useRealTimers();
    let resolveFirst: (r: ValidationReport) => void = () => {};
    const first = new Promise<ValidationReport>((res) => (resolveFirst = res));
    let call = 0;
    const validator = new LiveValidator(() => {
      call += 1;
      return call === 1 ? first : Promise.resolve(reportWith());
    }, 0);
    const ws = emptyWorkspace();
    const p1 = validator.run(ws);
    const p2 = validator.run(ws);
    await p2;
    resolveFirst(reportWith("stale"));
    await p1;
    expect(validator.highlights.size).toBe(0); // stale report was discarded
  });
});
