/** The block palette is a pure function of the ontology document: a category
 * tree of event blocks with role sockets, plus relation, participant-variable,
 * and ordering blocks. Nothing here is hand-maintained. */

import type { OntologyDoc, OntologyRelation, OrderingKind } from "./types.js";

export interface RoleSocket {
  name: string;
  allowedTypes: string[];
  min: number;
  max: number | null;
}

export interface EventBlockDef {
  kind: "event";
  type: string;
  label: string;
  sockets: RoleSocket[];
}

export interface CategoryNode {
  id: string;
  children: CategoryNode[];
  events: EventBlockDef[];
}

export interface RelationBlockDef {
  kind: "relation";
  type: string;
  label: string;
  subjectTypes: string[];
  objectTypes: string[];
}

export interface OrderBlockDef {
  kind: "order";
  ordering: OrderingKind;
  label: string;
}

export interface BlockPalette {
  categories: CategoryNode[];
  relations: RelationBlockDef[];
  orderBlocks: OrderBlockDef[];
  entityTypes: string[];
  eventCount: number;
}

const ORDER_BLOCKS: OrderBlockDef[] = [
  { kind: "order", ordering: "linear", label: "in order" },
  { kind: "order", ordering: "unordered_group", label: "in any order" },
  { kind: "order", ordering: "exclusive_group", label: "one of" },
];

export function paletteFromOntology(doc: OntologyDoc): BlockPalette {
  const roots: CategoryNode[] = [];
  const nodes = new Map<string, CategoryNode>();

  const nodeFor = (path: string[]): CategoryNode => {
    let parentChildren = roots;
    let node: CategoryNode | undefined;
    for (const id of path) {
      node = nodes.get(id);
      if (!node) {
        node = { id, children: [], events: [] };
        nodes.set(id, node);
        parentChildren.push(node);
      }
      parentChildren = node.children;
    }
    return node!;
  };

  let eventCount = 0;
  for (const event of doc.events) {
    const leaf = nodeFor(event.category);
    leaf.events.push({
      kind: "event",
      type: event.id,
      label: event.label,
      sockets: event.roles.map((role) => ({
        name: role.name,
        allowedTypes: [...role.types],
        min: role.min,
        max: role.max,
      })),
    });
    eventCount += 1;
  }

  const relations: RelationBlockDef[] = doc.relations.map(
    (rel: OntologyRelation) => ({
      kind: "relation",
      type: rel.id,
      label: rel.label,
      subjectTypes: [...rel.subject_types],
      objectTypes: [...rel.object_types],
    }),
  );

  return {
    categories: roots,
    relations,
    orderBlocks: ORDER_BLOCKS,
    entityTypes: doc.entities.map((e) => e.id),
    eventCount,
  };
}

/** Depth-first event blocks under a category node (for expanding a category). */
export function eventsUnder(node: CategoryNode): EventBlockDef[] {
  const out = [...node.events];
  for (const child of node.children) {
    out.push(...eventsUnder(child));
  }
  return out;
}

export function findCategory(
  palette: BlockPalette,
  id: string,
): CategoryNode | undefined {
  const stack = [...palette.categories];
  while (stack.length) {
    const node = stack.pop()!;
    if (node.id === id) return node;
    stack.push(...node.children);
  }
  return undefined;
}
