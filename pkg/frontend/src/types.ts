/** Wire formats shared with the server. The schema document is the only
 * exchange format; the editor's block layout never leaves the client. */

export interface OntologyRole {
  name: string;
  types: string[];
  min: number;
  max: number | null;
}

export interface OntologyEvent {
  id: string;
  category: string[];
  label: string;
  roles: OntologyRole[];
}

export interface OntologyEntity {
  id: string;
  label: string;
  description?: string;
}

export interface OntologyRelation {
  id: string;
  label: string;
  subject_types: string[];
  object_types: string[];
}

export interface OntologyDoc {
  format_version: number;
  entities: OntologyEntity[];
  events: OntologyEvent[];
  relations: OntologyRelation[];
}

export type OrderingKind = "linear" | "unordered_group" | "exclusive_group";

export interface SchemaStep {
  id: string;
  "@type": string;
  description: string;
  fillers: Record<string, string[]>;
}

export interface SchemaParticipant {
  id: string;
  name: string;
  coarse_types: string[];
  fine_types: string[];
}

export interface SchemaRelation {
  relation_type: string;
  subject: string;
  object: string;
}

export interface SchemaOrdering {
  kind: OrderingKind;
  members: string[];
}

export interface SchemaProvenance {
  kind: "manual" | "skeleton_fleshed";
  skeleton_id?: string;
  draft?: boolean;
}

export interface SchemaDoc {
  format_version: number;
  id: string;
  name: string;
  description: string;
  provenance: SchemaProvenance;
  participants: SchemaParticipant[];
  steps: SchemaStep[];
  relations: SchemaRelation[];
  order: SchemaOrdering[];
}

export interface ValidationIssue {
  severity: "error" | "warning";
  location: string;
  message: string;
}

export interface ValidationReport {
  ok: boolean;
  issues: ValidationIssue[];
}

export interface SchemaListing {
  id: string;
  version: number;
  provenance: string;
}
