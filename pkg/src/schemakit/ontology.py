"""Event/entity/relation type ontology: loading, cross-validation, category queries.

The ontology is loaded once from a JSON document and is immutable afterwards,
so it can be shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

#: Virtual root of the event-category tree. Never appears in a category_path;
#: querying it returns every event type.
ROOT_CATEGORY = "ROOT"

FORMAT_VERSION = 1


class OntologyError(Exception):
    pass


class OntologyFormatError(OntologyError):
    """The document is structurally unreadable (bad JSON, missing fields)."""


class OntologyValidationError(OntologyError):
    """The document parsed but violates ontology invariants.

    ``issues`` lists every problem found (dangling references, duplicate ids,
    bad cardinalities), not just the first.
    """

    def __init__(self, issues: Iterable[str]):
        self.issues = list(issues)
        super().__init__(
            "invalid ontology (%d issue%s): %s"
            % (len(self.issues), "" if len(self.issues) == 1 else "s", "; ".join(self.issues))
        )


@dataclass(frozen=True)
class EntityTypeDef:
    id: str
    label: str
    description: str = ""


@dataclass(frozen=True)
class RoleSlot:
    name: str
    allowed_entity_types: frozenset[str]
    min_fillers: int = 0
    max_fillers: int | None = None  # None encodes "unbounded"


@dataclass(frozen=True)
class EventTypeDef:
    id: str
    category_path: tuple[str, ...]
    label: str
    roles: tuple[RoleSlot, ...]

    def role(self, name: str) -> RoleSlot | None:
        for slot in self.roles:
            if slot.name == name:
                return slot
        return None

    @property
    def role_names(self) -> list[str]:
        return [slot.name for slot in self.roles]


@dataclass(frozen=True)
class RelationTypeDef:
    id: str
    label: str
    subject_types: frozenset[str]
    object_types: frozenset[str]


@dataclass
class Ontology:
    event_types: tuple[EventTypeDef, ...]
    entity_types: tuple[EntityTypeDef, ...]
    relation_types: tuple[RelationTypeDef, ...]
    format_version: int = FORMAT_VERSION
    _events_by_id: dict[str, EventTypeDef] = field(init=False, repr=False)
    _entities_by_id: dict[str, EntityTypeDef] = field(init=False, repr=False)
    _relations_by_id: dict[str, RelationTypeDef] = field(init=False, repr=False)
    _category_children: dict[str, list[str]] = field(init=False, repr=False)

    def __post_init__(self):
        self._events_by_id = {e.id: e for e in self.event_types}
        self._entities_by_id = {e.id: e for e in self.entity_types}
        self._relations_by_id = {r.id: r for r in self.relation_types}
        children: dict[str, list[str]] = {ROOT_CATEGORY: []}
        for ev in self.event_types:
            parent = ROOT_CATEGORY
            for cat in ev.category_path:
                bucket = children.setdefault(parent, [])
                if cat not in bucket:
                    bucket.append(cat)
                children.setdefault(cat, [])
                parent = cat
        self._category_children = children

    def event_type(self, type_id: str) -> EventTypeDef | None:
        return self._events_by_id.get(type_id)

    def entity_type(self, type_id: str) -> EntityTypeDef | None:
        return self._entities_by_id.get(type_id)

    def relation_type(self, type_id: str) -> RelationTypeDef | None:
        return self._relations_by_id.get(type_id)

    def has_category(self, category: str) -> bool:
        return category in self._category_children

    @property
    def categories(self) -> list[str]:
        return [c for c in self._category_children if c != ROOT_CATEGORY]

    def child_categories(self, category: str) -> list[str]:
        return list(self._category_children.get(category, []))

    @property
    def entity_type_ids(self) -> frozenset[str]:
        return frozenset(self._entities_by_id)

    @property
    def event_type_ids(self) -> list[str]:
        return [e.id for e in self.event_types]


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise OntologyFormatError(f"{where}: missing required field {key!r}")
    return obj[key]


def _parse_role(raw: dict, where: str) -> RoleSlot:
    name = _require(raw, "name", where)
    types = _require(raw, "types", f"{where}.{name}")
    if not isinstance(types, list):
        raise OntologyFormatError(f"{where}.{name}: types must be a list")
    min_fillers = raw.get("min", 0)
    max_fillers = raw.get("max", None)
    return RoleSlot(
        name=name,
        allowed_entity_types=frozenset(types),
        min_fillers=int(min_fillers),
        max_fillers=None if max_fillers is None else int(max_fillers),
    )


def load_ontology(source: bytes | str | BinaryIO) -> Ontology:
    """Parse and fully cross-check an ontology document.

    Raises OntologyFormatError on unreadable input and
    OntologyValidationError (listing every issue) on invariant violations.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise OntologyFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise OntologyFormatError("top level must be an object")

    version = _require(doc, "format_version", "document")
    entities = tuple(
        EntityTypeDef(
            id=_require(raw, "id", "entities"),
            label=raw.get("label", raw.get("id", "")),
            description=raw.get("description", ""),
        )
        for raw in _require(doc, "entities", "document")
    )
    events = []
    for raw in _require(doc, "events", "document"):
        ev_id = _require(raw, "id", "events")
        events.append(
            EventTypeDef(
                id=ev_id,
                category_path=tuple(_require(raw, "category", f"events.{ev_id}")),
                label=raw.get("label", ev_id),
                roles=tuple(_parse_role(r, f"events.{ev_id}") for r in raw.get("roles", [])),
            )
        )
    relations = tuple(
        RelationTypeDef(
            id=_require(raw, "id", "relations"),
            label=raw.get("label", raw.get("id", "")),
            subject_types=frozenset(_require(raw, "subject_types", "relations")),
            object_types=frozenset(_require(raw, "object_types", "relations")),
        )
        for raw in _require(doc, "relations", "document")
    )

    issues = _validate(events, entities, relations)
    if issues:
        raise OntologyValidationError(issues)
    return Ontology(
        event_types=tuple(events),
        entity_types=entities,
        relation_types=relations,
        format_version=int(version),
    )


def _validate(events, entities, relations) -> list[str]:
    issues: list[str] = []
    entity_ids = set()
    for ent in entities:
        if not ent.id:
            issues.append("entity type with empty id")
        elif ent.id in entity_ids:
            issues.append(f"duplicate entity type id {ent.id!r}")
        entity_ids.add(ent.id)

    event_ids = set()
    for ev in events:
        if not ev.id:
            issues.append("event type with empty id")
        elif ev.id in event_ids:
            issues.append(f"duplicate event type id {ev.id!r}")
        event_ids.add(ev.id)
        if not ev.category_path:
            issues.append(f"event {ev.id!r}: empty category path")
        seen_roles = set()
        for slot in ev.roles:
            if slot.name in seen_roles:
                issues.append(f"event {ev.id!r}: duplicate role {slot.name!r}")
            seen_roles.add(slot.name)
            if not slot.allowed_entity_types:
                issues.append(f"event {ev.id!r} role {slot.name!r}: no allowed entity types")
            for t in sorted(slot.allowed_entity_types):
                if t not in entity_ids:
                    issues.append(f"event {ev.id!r} role {slot.name!r}: unknown entity type {t!r}")
            if slot.min_fillers < 0:
                issues.append(f"event {ev.id!r} role {slot.name!r}: negative min_fillers")
            if slot.max_fillers is not None and slot.min_fillers > slot.max_fillers:
                issues.append(f"event {ev.id!r} role {slot.name!r}: min_fillers > max_fillers")

    relation_ids = set()
    for rel in relations:
        if rel.id in relation_ids:
            issues.append(f"duplicate relation type id {rel.id!r}")
        relation_ids.add(rel.id)
        for side, types in (("subject", rel.subject_types), ("object", rel.object_types)):
            if not types:
                issues.append(f"relation {rel.id!r}: empty {side} types")
            for t in sorted(types):
                if t not in entity_ids:
                    issues.append(f"relation {rel.id!r}: unknown {side} entity type {t!r}")

    # Category forest: each category must have one consistent parent, and a
    # category holding event types (a path leaf) must not also be an interior
    # node on some other path.
    parent: dict[str, str] = {}
    leaves: set[str] = set()
    interior: set[str] = set()
    for ev in events:
        if not ev.category_path:
            continue
        prev = ROOT_CATEGORY
        for i, cat in enumerate(ev.category_path):
            if cat == ROOT_CATEGORY:
                issues.append(f"event {ev.id!r}: category path uses reserved id {ROOT_CATEGORY!r}")
                break
            if cat in parent and parent[cat] != prev:
                issues.append(
                    f"category {cat!r} has conflicting parents {parent[cat]!r} and {prev!r}"
                )
            parent.setdefault(cat, prev)
            if i == len(ev.category_path) - 1:
                leaves.add(cat)
            else:
                interior.add(cat)
            prev = cat
    for cat in sorted(leaves & interior):
        issues.append(f"category {cat!r} holds event types but also has subcategories")
    for cat in parent:
        seen = {cat}
        cur = cat
        while cur != ROOT_CATEGORY:
            cur = parent.get(cur, ROOT_CATEGORY)
            if cur in seen:
                issues.append(f"category cycle through {cat!r}")
                break
            seen.add(cur)
    return issues


def event_types_in_category(ontology: Ontology, category: str) -> list[EventTypeDef]:
    """All event types whose category path contains ``category``, in definition order."""
    if category == ROOT_CATEGORY:
        return list(ontology.event_types)
    if not ontology.has_category(category):
        raise KeyError(f"unknown category {category!r}")
    return [ev for ev in ontology.event_types if category in ev.category_path]


def ontology_to_document(ontology: Ontology) -> dict:
    """Rebuild the JSON document form (the wire format served over HTTP)."""
    return {
        "format_version": ontology.format_version,
        "entities": [
            {"id": e.id, "label": e.label, "description": e.description}
            for e in ontology.entity_types
        ],
        "events": [
            {
                "id": ev.id,
                "category": list(ev.category_path),
                "label": ev.label,
                "roles": [
                    {
                        "name": slot.name,
                        "types": sorted(slot.allowed_entity_types),
                        "min": slot.min_fillers,
                        "max": slot.max_fillers,
                    }
                    for slot in ev.roles
                ],
            }
            for ev in ontology.event_types
        ],
        "relations": [
            {
                "id": r.id,
                "label": r.label,
                "subject_types": sorted(r.subject_types),
                "object_types": sorted(r.object_types),
            }
            for r in ontology.relation_types
        ],
    }
