/** Skeleton import: the server expands a mined skeleton into a partially
 * filled schema (events only, one linear chain); the editor opens it as a
 * workspace with empty role sockets for the annotator to flesh out. */

import type { ApiClient } from "./api.js";
import { schemaToWorkspace, type Workspace } from "./workspace.js";

export async function importSkeleton(
  client: ApiClient,
  skeletonId: string,
): Promise<Workspace> {
  const doc = await client.instantiateSkeleton(skeletonId);
  const ws = schemaToWorkspace(doc, null);
  ws.dirty = true; // not yet persisted
  return ws;
}
