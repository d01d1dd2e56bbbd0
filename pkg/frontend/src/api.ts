/** REST client for the schemakit server, with optimistic concurrency.
 *
 * A PUT with a stale version surfaces as VersionConflictError; a PUT of a
 * schema the server rejects as invalid surfaces as ValidationRejectedError
 * with the report attached. Saving a workspace whose last validation had
 * errors requires the explicit draft override, which the server records in
 * the schema's provenance.
 */

import type {
  OntologyDoc,
  SchemaDoc,
  SchemaListing,
  ValidationReport,
} from "./types.js";
import { workspaceToSchema, type Workspace } from "./workspace.js";

export class VersionConflictError extends Error {
  constructor(readonly detail: string) {
    super(detail);
    this.name = "VersionConflictError";
  }
}

export class ValidationRejectedError extends Error {
  constructor(readonly report: ValidationReport) {
    super("schema has validation errors; save as draft to override");
    this.name = "ValidationRejectedError";
  }
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<Response> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    return this.fetchFn(`${this.baseUrl}${path}`, init);
  }

  private async json<T>(response: Response): Promise<T> {
    if (response.ok) {
      return (await response.json()) as T;
    }
    let detail: unknown = response.statusText;
    try {
      detail = ((await response.json()) as { detail?: unknown }).detail;
    } catch {
      /* non-JSON error body */
    }
    if (response.status === 409) {
      throw new VersionConflictError(String(detail));
    }
    if (response.status === 422) {
      throw new ValidationRejectedError(detail as ValidationReport);
    }
    throw new ApiError(response.status, JSON.stringify(detail));
  }

  async getOntology(): Promise<OntologyDoc> {
    return this.json(await this.request("GET", "/ontology"));
  }

  async listSchemas(): Promise<SchemaListing[]> {
    const body = await this.json<{ schemas: SchemaListing[] }>(
      await this.request("GET", "/schemas"),
    );
    return body.schemas;
  }

  async getSchema(id: string): Promise<{ version: number; schema: SchemaDoc }> {
    return this.json(await this.request("GET", `/schemas/${id}`));
  }

  async putSchema(
    doc: SchemaDoc,
    version: number | null,
    draft = false,
  ): Promise<{ id: string; version: number }> {
    const params = new URLSearchParams();
    if (version !== null) params.set("version", String(version));
    if (draft) params.set("draft", "true");
    const query = params.toString();
    const path = `/schemas/${doc.id}${query ? `?${query}` : ""}`;
    return this.json(await this.request("PUT", path, doc));
  }

  async deleteSchema(id: string): Promise<void> {
    const response = await this.request("DELETE", `/schemas/${id}`);
    if (!response.ok) {
      await this.json(response);
    }
  }

  async validate(doc: SchemaDoc): Promise<ValidationReport> {
    return this.json(await this.request("POST", "/validate", doc));
  }

  async instantiateSkeleton(id: string): Promise<SchemaDoc> {
    const body = await this.json<{ schema: SchemaDoc }>(
      await this.request("POST", `/skeletons/${id}/instantiate`),
    );
    return body.schema;
  }
}

/** Persist a workspace. Refuses locally (no network call) when the last
 * validation report has errors, unless the caller passes the draft override. */
export async function saveWorkspace(
  client: ApiClient,
  ws: Workspace,
  options: { draft?: boolean } = {},
): Promise<number> {
  const draft = options.draft ?? false;
  if (!draft && ws.lastReport !== null && !ws.lastReport.ok) {
    throw new ValidationRejectedError(ws.lastReport);
  }
  const doc = workspaceToSchema(ws);
  if (draft) {
    doc.provenance = { ...doc.provenance, draft: true };
  }
  const result = await client.putSchema(doc, ws.baseVersion, draft);
  ws.baseVersion = result.version;
  ws.dirty = false;
  return result.version;
}
