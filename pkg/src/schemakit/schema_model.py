"""Machine-readable event schemas: construction, validation, type inference,
skeleton import, and canonical (de)serialization.

Schemas are immutable values; an edit produces a new Schema. The on-disk form
is a JSON document with canonical key ordering so that
serialize(deserialize(serialize(s))) is byte-identical to serialize(s).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Iterable

from .ontology import Ontology

FORMAT_VERSION = 1

FINE_TYPE_RE = re.compile(r"^Q\d+$")

PROVENANCE_KINDS = ("manual", "skeleton_fleshed")
ORDERING_KINDS = ("linear", "unordered_group", "exclusive_group")


class SchemaFormatError(Exception):
    """Raised on structurally unreadable schema documents, with location info."""


@dataclass(frozen=True)
class Participant:
    id: str
    name: str
    coarse_types: frozenset[str] = frozenset()
    fine_types: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Step:
    id: str
    event_type: str
    fillers: tuple[tuple[str, tuple[str, ...]], ...] = ()  # (role, participant ids)
    description: str = ""

    def filler_map(self) -> dict[str, tuple[str, ...]]:
        return dict(self.fillers)

    def participant_ids(self) -> list[str]:
        seen: list[str] = []
        for _, pids in self.fillers:
            for pid in pids:
                if pid not in seen:
                    seen.append(pid)
        return seen


def make_step(step_id: str, event_type: str, fillers: dict[str, Iterable[str]] | None = None,
              description: str = "") -> Step:
    """Step constructor that accepts a plain role->participants mapping."""
    items = tuple(
        (role, tuple(pids)) for role, pids in sorted((fillers or {}).items())
    )
    return Step(id=step_id, event_type=event_type, fillers=items, description=description)


@dataclass(frozen=True)
class RelationInstance:
    relation_type: str
    subject: str
    object: str


@dataclass(frozen=True)
class OrderingConstraint:
    kind: str  # linear | unordered_group | exclusive_group
    members: tuple[str, ...]


@dataclass(frozen=True)
class Provenance:
    kind: str = "manual"
    skeleton_id: str | None = None
    draft: bool = False


@dataclass(frozen=True)
class Schema:
    id: str
    name: str
    description: str = ""
    steps: tuple[Step, ...] = ()
    participants: tuple[Participant, ...] = ()
    relations: tuple[RelationInstance, ...] = ()
    orderings: tuple[OrderingConstraint, ...] = ()
    provenance: Provenance = Provenance()

    def participant(self, pid: str) -> Participant | None:
        for p in self.participants:
            if p.id == pid:
                return p
        return None

    def step(self, sid: str) -> Step | None:
        for s in self.steps:
            if s.id == sid:
                return s
        return None

    def event_types(self) -> list[str]:
        return [s.event_type for s in self.steps]


@dataclass(frozen=True)
class SkeletonSchema:
    id: str
    events: tuple[str, ...]
    score: float


@dataclass(frozen=True)
class Issue:
    severity: str  # error | warning
    location: str  # step/participant/relation id
    message: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not any(i.severity == "error" for i in self.issues)

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "error"]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "warning"]

    def to_document(self) -> dict:
        return {
            "ok": self.ok,
            "issues": [
                {"severity": i.severity, "location": i.location, "message": i.message}
                for i in self.issues
            ],
        }


def _linear_order_cycle(orderings: Iterable[OrderingConstraint]) -> list[str] | None:
    """Return one cycle (as a list of step ids) in the union of linear chains, or None."""
    edges: dict[str, set[str]] = {}
    for oc in orderings:
        if oc.kind != "linear":
            continue
        for a, b in zip(oc.members, oc.members[1:]):
            edges.setdefault(a, set()).add(b)
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {n: WHITE for n in edges}
    stack_path: list[str] = []

    def visit(n: str) -> list[str] | None:
        color[n] = GRAY
        stack_path.append(n)
        for m in sorted(edges.get(n, ())):
            if color.get(m, WHITE) == GRAY:
                return stack_path[stack_path.index(m):] + [m]
            if color.get(m, WHITE) == WHITE and m in edges:
                found = visit(m)
                if found:
                    return found
        stack_path.pop()
        color[n] = BLACK
        return None

    for node in sorted(edges):
        if color[node] == WHITE:
            found = visit(node)
            if found:
                return found
    return None


def validate_schema(schema: Schema, ontology: Ontology) -> ValidationReport:
    """Type-check a schema against the ontology.

    Problems are reported, never raised: errors for unresolved references,
    cardinality violations, type conflicts, and ordering cycles; warnings for
    untyped participants and empty step descriptions.
    """
    issues: list[Issue] = []
    err = lambda loc, msg: issues.append(Issue("error", loc, msg))
    warn = lambda loc, msg: issues.append(Issue("warning", loc, msg))

    if not schema.steps:
        err(schema.id, "schema has no steps")

    pids = {p.id for p in schema.participants}
    for p in schema.participants:
        if not p.name:
            err(p.id, "participant has an empty name")
        for t in sorted(p.coarse_types):
            if ontology.entity_type(t) is None:
                err(p.id, f"unknown coarse type {t!r}")
        for t in sorted(p.fine_types):
            if not FINE_TYPE_RE.match(t):
                err(p.id, f"fine type {t!r} does not match the external-id format")
        if not p.coarse_types:
            warn(p.id, "participant has no coarse types")

    filled: set[str] = set()
    step_ids: set[str] = set()
    for step in schema.steps:
        if step.id in step_ids:
            err(step.id, "duplicate step id")
        step_ids.add(step.id)
        ev = ontology.event_type(step.event_type)
        if ev is None:
            err(step.id, f"unknown event type {step.event_type!r}")
        if not step.description:
            warn(step.id, "step has no description")
        for role, fill_ids in step.fillers:
            slot = ev.role(role) if ev else None
            if ev is not None and slot is None:
                err(step.id, f"event type {step.event_type!r} has no role {role!r}")
            for pid in fill_ids:
                filled.add(pid)
                if pid not in pids:
                    err(step.id, f"role {role!r} references unknown participant {pid!r}")
            if slot is not None:
                n = len(fill_ids)
                if n < slot.min_fillers:
                    err(step.id, f"role {role!r} has {n} fillers, fewer than {slot.min_fillers}")
                if slot.max_fillers is not None and n > slot.max_fillers:
                    err(step.id, f"role {role!r} has {n} fillers, more than {slot.max_fillers}")
                for pid in fill_ids:
                    part = schema.participant(pid)
                    if part and part.coarse_types and not (part.coarse_types & slot.allowed_entity_types):
                        err(
                            step.id,
                            f"participant {pid!r} types {sorted(part.coarse_types)} are "
                            f"disjoint from role {role!r} allowed types "
                            f"{sorted(slot.allowed_entity_types)}",
                        )

    for p in schema.participants:
        if p.id not in filled:
            err(p.id, "participant fills no role in any step")

    # Role-driven typing: a participant whose role constraints admit no entity
    # type at all is a conflict even if it has no declared types.
    inferred = infer_participant_types(schema, ontology)
    for pid in sorted(inferred):
        if not inferred[pid] and pid in filled:
            part = schema.participant(pid)
            if part is not None and not part.coarse_types:
                err(pid, "no entity type satisfies every role this participant fills")

    for i, rel in enumerate(schema.relations):
        loc = f"relations[{i}]"
        rt = ontology.relation_type(rel.relation_type)
        if rt is None:
            err(loc, f"unknown relation type {rel.relation_type!r}")
        for side, pid in (("subject", rel.subject), ("object", rel.object)):
            if pid not in pids:
                err(loc, f"{side} {pid!r} is not a participant of this schema")
            elif rt is not None:
                allowed = rt.subject_types if side == "subject" else rt.object_types
                part = schema.participant(pid)
                if part and part.coarse_types and not (part.coarse_types & allowed):
                    err(
                        loc,
                        f"{side} {pid!r} types {sorted(part.coarse_types)} are disjoint "
                        f"from relation {rel.relation_type!r} {side} types {sorted(allowed)}",
                    )

    exclusive_seen: set[str] = set()
    for i, oc in enumerate(schema.orderings):
        loc = f"order[{i}]"
        if oc.kind not in ORDERING_KINDS:
            err(loc, f"unknown ordering kind {oc.kind!r}")
        if len(oc.members) < 2:
            err(loc, "ordering constraint needs at least 2 members")
        for sid in oc.members:
            if sid not in step_ids:
                err(loc, f"ordering references unknown step {sid!r}")
        if oc.kind == "exclusive_group":
            for sid in oc.members:
                if sid in exclusive_seen:
                    err(loc, f"step {sid!r} appears in two exclusive groups")
                exclusive_seen.add(sid)

    cycle = _linear_order_cycle(schema.orderings)
    if cycle:
        err("order", "linear ordering constraints form a cycle: " + " < ".join(cycle))

    return ValidationReport(issues=tuple(issues))


def infer_participant_types(schema: Schema, ontology: Ontology) -> dict[str, frozenset[str]]:
    """Intersect role constraints (and declared coarse types) per participant.

    An empty result set marks a type conflict; it is never raised here. The
    result is independent of step order.
    """
    universe = ontology.entity_type_ids
    result: dict[str, frozenset[str]] = {}
    for p in schema.participants:
        allowed = universe
        for step in schema.steps:
            ev = ontology.event_type(step.event_type)
            if ev is None:
                continue
            for role, fill_ids in step.fillers:
                slot = ev.role(role)
                if slot is not None and p.id in fill_ids:
                    allowed = allowed & slot.allowed_entity_types
        if p.coarse_types:
            allowed = allowed & p.coarse_types
        result[p.id] = frozenset(allowed)
    return result


def schema_from_skeleton(skeleton: SkeletonSchema, ontology: Ontology) -> Schema:
    """Expand an event-only skeleton into a partially filled schema.

    One step per skeleton event (no fillers, no description), no participants
    or relations, and a single linear ordering over all steps. The result
    validates with warnings but zero errors.
    """
    if len(skeleton.events) < 2:
        raise ValueError("skeleton must contain at least 2 events")
    for ev in skeleton.events:
        if ontology.event_type(ev) is None:
            raise ValueError(f"skeleton event type {ev!r} not in ontology")
    steps = tuple(
        Step(id=f"step-{i + 1}", event_type=ev) for i, ev in enumerate(skeleton.events)
    )
    return Schema(
        id=f"schema-{skeleton.id}",
        name=skeleton.id,
        steps=steps,
        orderings=(OrderingConstraint("linear", tuple(s.id for s in steps)),),
        provenance=Provenance(kind="skeleton_fleshed", skeleton_id=skeleton.id),
    )


# --- serialization ---------------------------------------------------------


def schema_to_document(schema: Schema) -> dict:
    provenance: dict = {"kind": schema.provenance.kind}
    if schema.provenance.skeleton_id is not None:
        provenance["skeleton_id"] = schema.provenance.skeleton_id
    if schema.provenance.draft:
        provenance["draft"] = True
    return {
        "format_version": FORMAT_VERSION,
        "id": schema.id,
        "name": schema.name,
        "description": schema.description,
        "provenance": provenance,
        "participants": [
            {
                "id": p.id,
                "name": p.name,
                "coarse_types": sorted(p.coarse_types),
                "fine_types": sorted(p.fine_types),
            }
            for p in schema.participants
        ],
        "steps": [
            {
                "id": s.id,
                "@type": s.event_type,
                "description": s.description,
                "fillers": {role: list(pids) for role, pids in s.fillers},
            }
            for s in schema.steps
        ],
        "relations": [
            {"relation_type": r.relation_type, "subject": r.subject, "object": r.object}
            for r in schema.relations
        ],
        "order": [
            {"kind": oc.kind, "members": list(oc.members)} for oc in schema.orderings
        ],
    }


def serialize(schema: Schema) -> bytes:
    """Canonical byte form: sorted keys, two-space indent, trailing newline."""
    doc = schema_to_document(schema)
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode("utf-8")


def _req(obj: dict, key: str, where: str):
    if key not in obj:
        raise SchemaFormatError(f"{where}: missing required field {key!r}")
    return obj[key]


def schema_from_document(doc: dict) -> Schema:
    if not isinstance(doc, dict):
        raise SchemaFormatError("schema document must be an object")
    raw_prov = doc.get("provenance", {})
    kind = raw_prov.get("kind", "manual")
    if kind not in PROVENANCE_KINDS:
        raise SchemaFormatError(f"provenance: unknown kind {kind!r}")
    participants = []
    for i, raw in enumerate(doc.get("participants", [])):
        where = f"participants[{i}]"
        participants.append(
            Participant(
                id=_req(raw, "id", where),
                name=_req(raw, "name", where),
                coarse_types=frozenset(raw.get("coarse_types", [])),
                fine_types=frozenset(raw.get("fine_types", [])),
            )
        )
    steps = []
    for i, raw in enumerate(doc.get("steps", [])):
        where = f"steps[{i}]"
        fillers = raw.get("fillers", {})
        if not isinstance(fillers, dict):
            raise SchemaFormatError(f"{where}: fillers must be a mapping")
        steps.append(
            make_step(
                step_id=_req(raw, "id", where),
                event_type=_req(raw, "@type", where),
                fillers={role: list(pids) for role, pids in fillers.items()},
                description=raw.get("description", ""),
            )
        )
    relations = []
    for i, raw in enumerate(doc.get("relations", [])):
        where = f"relations[{i}]"
        relations.append(
            RelationInstance(
                relation_type=_req(raw, "relation_type", where),
                subject=_req(raw, "subject", where),
                object=_req(raw, "object", where),
            )
        )
    orderings = []
    for i, raw in enumerate(doc.get("order", [])):
        where = f"order[{i}]"
        orderings.append(
            OrderingConstraint(
                kind=_req(raw, "kind", where),
                members=tuple(_req(raw, "members", where)),
            )
        )
    return Schema(
        id=_req(doc, "id", "document"),
        name=_req(doc, "name", "document"),
        description=doc.get("description", ""),
        steps=tuple(steps),
        participants=tuple(participants),
        relations=tuple(relations),
        orderings=tuple(orderings),
        provenance=Provenance(
            kind=kind,
            skeleton_id=raw_prov.get("skeleton_id"),
            draft=bool(raw_prov.get("draft", False)),
        ),
    )


def deserialize(data: bytes | str) -> Schema:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaFormatError(f"not valid JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return schema_from_document(doc)


def mark_draft(schema: Schema, draft: bool = True) -> Schema:
    return replace(schema, provenance=replace(schema.provenance, draft=draft))
