/** Editable workspace model. Blocks mirror the schema document one-to-one so
 * that workspaceToSchema(schemaToWorkspace(doc)) reproduces doc exactly. */

import type {
  OrderingKind,
  SchemaDoc,
  SchemaProvenance,
  ValidationReport,
} from "./types.js";

export interface ParticipantBlock {
  id: string;
  name: string;
  coarseTypes: string[];
  fineTypes: string[];
}

export interface EventBlock {
  id: string;
  type: string;
  description: string;
  /** role name -> participant block ids plugged into the socket */
  sockets: Record<string, string[]>;
}

export interface RelationBlock {
  type: string;
  subject: string;
  object: string;
}

export interface OrderBlock {
  kind: OrderingKind;
  members: string[];
}

export interface Workspace {
  schemaId: string;
  name: string;
  description: string;
  provenance: SchemaProvenance;
  steps: EventBlock[];
  participants: ParticipantBlock[];
  relations: RelationBlock[];
  orders: OrderBlock[];
  dirty: boolean;
  lastReport: ValidationReport | null;
  /** Version of the stored schema this workspace was loaded from, if any. */
  baseVersion: number | null;
}

export function emptyWorkspace(schemaId = "untitled"): Workspace {
  return {
    schemaId,
    name: "",
    description: "",
    provenance: { kind: "manual" },
    steps: [],
    participants: [],
    relations: [],
    orders: [],
    dirty: false,
    lastReport: null,
    baseVersion: null,
  };
}

export function schemaToWorkspace(
  doc: SchemaDoc,
  baseVersion: number | null = null,
): Workspace {
  return {
    schemaId: doc.id,
    name: doc.name,
    description: doc.description,
    provenance: { ...doc.provenance },
    steps: doc.steps.map((step) => ({
      id: step.id,
      type: step["@type"],
      description: step.description,
      sockets: Object.fromEntries(
        Object.entries(step.fillers).map(([role, ids]) => [role, [...ids]]),
      ),
    })),
    participants: doc.participants.map((p) => ({
      id: p.id,
      name: p.name,
      coarseTypes: [...p.coarse_types],
      fineTypes: [...p.fine_types],
    })),
    relations: doc.relations.map((r) => ({
      type: r.relation_type,
      subject: r.subject,
      object: r.object,
    })),
    orders: doc.order.map((o) => ({ kind: o.kind, members: [...o.members] })),
    dirty: false,
    lastReport: null,
    baseVersion,
  };
}

export function workspaceToSchema(ws: Workspace): SchemaDoc {
  return {
    format_version: 1,
    id: ws.schemaId,
    name: ws.name,
    description: ws.description,
    provenance: { ...ws.provenance },
    participants: ws.participants.map((p) => ({
      id: p.id,
      name: p.name,
      coarse_types: [...p.coarseTypes].sort(),
      fine_types: [...p.fineTypes].sort(),
    })),
    steps: ws.steps.map((step) => ({
      id: step.id,
      "@type": step.type,
      description: step.description,
      fillers: Object.fromEntries(
        Object.keys(step.sockets)
          .sort()
          .map((role) => [role, [...step.sockets[role]]]),
      ),
    })),
    relations: ws.relations.map((r) => ({
      relation_type: r.type,
      subject: r.subject,
      object: r.object,
    })),
    order: ws.orders.map((o) => ({ kind: o.kind, members: [...o.members] })),
  };
}

/** Mutators used by the UI; every edit marks the workspace dirty. */

export function addStep(ws: Workspace, block: EventBlock): void {
  ws.steps.push(block);
  ws.dirty = true;
}

export function addParticipant(ws: Workspace, block: ParticipantBlock): void {
  ws.participants.push(block);
  ws.dirty = true;
}

export function plugParticipant(
  ws: Workspace,
  stepId: string,
  role: string,
  participantId: string,
): void {
  const step = ws.steps.find((s) => s.id === stepId);
  if (!step) throw new Error(`unknown step ${stepId}`);
  (step.sockets[role] ??= []).push(participantId);
  ws.dirty = true;
}
