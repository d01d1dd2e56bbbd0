/** Live validation loop: debounced server calls, error locations mapped to
 * block highlights, highlights cleared as soon as a newer report drops the
 * issue. All type checking happens server-side; this module only renders
 * reports. */

import type { SchemaDoc, ValidationReport } from "./types.js";
import { workspaceToSchema, type Workspace } from "./workspace.js";

export type ValidateFn = (doc: SchemaDoc) => Promise<ValidationReport>;
export type ReportListener = (
  report: ValidationReport,
  highlights: Set<string>,
) => void;

export function errorHighlights(report: ValidationReport): Set<string> {
  const out = new Set<string>();
  for (const issue of report.issues) {
    if (issue.severity === "error") {
      out.add(issue.location);
    }
  }
  return out;
}

export class LiveValidator {
  highlights: Set<string> = new Set();
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: Promise<void> | null = null;
  private generation = 0;
  private listeners: ReportListener[] = [];

  constructor(
    private readonly validate: ValidateFn,
    private readonly debounceMs = 300,
  ) {}

  onReport(listener: ReportListener): void {
    this.listeners.push(listener);
  }

  /** Call on every edit; the actual request fires after a quiet period. */
  schedule(ws: Workspace): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.run(ws);
    }, this.debounceMs);
  }

  /** Validate immediately (used on load and in tests). */
  run(ws: Workspace): Promise<void> {
    const generation = ++this.generation;
    const doc = workspaceToSchema(ws);
    const promise = this.validate(doc).then((report) => {
      if (generation !== this.generation) {
        return; // a newer validation superseded this one
      }
      ws.lastReport = report;
      this.highlights = errorHighlights(report);
      for (const listener of this.listeners) {
        listener(report, this.highlights);
      }
    });
    this.inflight = promise;
    return promise;
  }

  /** Await the most recent in-flight validation, if any. */
  async settle(): Promise<void> {
    if (this.inflight) {
      await this.inflight;
    }
  }
}
