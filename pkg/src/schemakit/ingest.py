"""Ingestion of per-document extracted-event graphs.

Documents arrive as JSON (one object per document, or JSON-lines for a
corpus), carrying events with confidences and role-filler values. Qualified
type/role names ("prefix:...Events/X/Slots/Y") are normalized to their local
names at parse time. Everything downstream assumes a single target ontology,
so unmapped events are dropped by apply_mapping.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

from .ontology import Ontology

MAPPING_FORMAT_VERSION = 1


class DocumentFormatError(Exception):
    pass


class MappingError(Exception):
    pass


@dataclass(frozen=True)
class ExtractedParticipant:
    id: str
    role: str
    entity_values: tuple[tuple[str, float], ...]  # (entity id, confidence)


@dataclass(frozen=True)
class ExtractedEvent:
    id: str
    event_type: str
    confidence: float
    participants: tuple[ExtractedParticipant, ...] = ()


@dataclass(frozen=True)
class DocumentGraph:
    doc_id: str
    events: tuple[ExtractedEvent, ...]

    @property
    def entities(self) -> frozenset[str]:
        out = set()
        for ev in self.events:
            for part in ev.participants:
                for entity, _ in part.entity_values:
                    out.add(entity)
        return frozenset(out)


@dataclass(frozen=True)
class EventMultiset:
    doc_id: str
    counts: tuple[tuple[str, int], ...]  # (event type, count), sorted by type

    def as_counter(self) -> Counter:
        return Counter(dict(self.counts))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def types(self) -> frozenset[str]:
        return frozenset(t for t, _ in self.counts)


@dataclass(frozen=True)
class Transaction:
    doc_id: str
    chain_id: str
    items: frozenset[str]


@dataclass
class EventTypeMapping:
    """Rules rewriting source event types (and their role names) to the target ontology."""

    rules: dict[str, tuple[str, dict[str, str]]]  # source -> (target, role renames)
    known_targets: frozenset[str] = field(default_factory=frozenset)


def local_name(qualified: str) -> str:
    """Strip any path-style prefix: '...Events/X/Slots/Y' -> 'Y'."""
    return qualified.rsplit("/", 1)[-1]


def _confidence(raw, where: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise DocumentFormatError(f"{where}: confidence {raw!r} is not a number")
    if not 0.0 <= value <= 1.0:
        raise DocumentFormatError(f"{where}: confidence {value} outside [0,1]")
    return value


def parse_document_graph(source: bytes | str | BinaryIO | dict) -> DocumentGraph:
    """Parse one extracted-event document. Unknown extra fields are ignored."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DocumentFormatError(f"not valid JSON: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict) or "@id" not in doc:
        raise DocumentFormatError("document must be an object with an @id field")
    doc_id = doc["@id"]
    events = []
    for i, raw in enumerate(doc.get("events", [])):
        where = f"{doc_id}.events[{i}]"
        if "@id" not in raw or "@type" not in raw:
            raise DocumentFormatError(f"{where}: event needs @id and @type")
        participants = []
        for j, rawp in enumerate(raw.get("participants", [])):
            values = tuple(
                (v["entity"], _confidence(v.get("confidence", 1.0), f"{where}.values[{j}]"))
                for v in rawp.get("values", [])
            )
            participants.append(
                ExtractedParticipant(
                    id=rawp.get("@id", f"{raw['@id']}.P{j}"),
                    role=local_name(rawp.get("role", "")),
                    entity_values=values,
                )
            )
        events.append(
            ExtractedEvent(
                id=raw["@id"],
                event_type=local_name(raw["@type"]),
                confidence=_confidence(raw.get("confidence", 1.0), where),
                participants=tuple(participants),
            )
        )
    ids = [e.id for e in events]
    if len(set(ids)) != len(ids):
        raise DocumentFormatError(f"{doc_id}: duplicate event ids")
    return DocumentGraph(doc_id=doc_id, events=tuple(events))


def load_mapping(source: bytes | str | BinaryIO | dict, ontology: Ontology) -> EventTypeMapping:
    """Load a (source type -> target type, role renames) mapping file and
    check every target against the ontology."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    doc = json.loads(source) if isinstance(source, str) else source
    rules: dict[str, tuple[str, dict[str, str]]] = {}
    problems = []
    for raw in doc.get("rules", []):
        src, target = raw["source"], raw["target"]
        if src in rules:
            problems.append(f"duplicate rule for source {src!r}")
        ev = ontology.event_type(target)
        if ev is None:
            problems.append(f"rule {src!r}: target {target!r} not in ontology")
            continue
        renames = dict(raw.get("roles", {}))
        for renamed in renames.values():
            if ev.role(renamed) is None:
                problems.append(f"rule {src!r}: target role {renamed!r} not on {target!r}")
        rules[src] = (target, renames)
    if problems:
        raise MappingError("; ".join(problems))
    return EventTypeMapping(rules=rules, known_targets=frozenset(ontology.event_type_ids))


def apply_mapping(doc: DocumentGraph, mapping: EventTypeMapping) -> tuple[DocumentGraph, int]:
    """Rewrite events with a rule; pass through events already in the target
    ontology; drop the rest. Returns the rewritten document and a drop tally.

    Pass-through of target-resolving types makes the operation idempotent.
    """
    kept = []
    dropped = 0
    for ev in doc.events:
        if ev.event_type in mapping.rules:
            target, renames = mapping.rules[ev.event_type]
            kept.append(
                ExtractedEvent(
                    id=ev.id,
                    event_type=target,
                    confidence=ev.confidence,
                    participants=tuple(
                        ExtractedParticipant(
                            id=p.id,
                            role=renames.get(p.role, p.role),
                            entity_values=p.entity_values,
                        )
                        for p in ev.participants
                    ),
                )
            )
        elif ev.event_type in mapping.known_targets:
            kept.append(ev)
        else:
            dropped += 1
    return DocumentGraph(doc_id=doc.doc_id, events=tuple(kept)), dropped


def event_multiset(doc: DocumentGraph) -> EventMultiset:
    counts = Counter(ev.event_type for ev in doc.events)
    return EventMultiset(doc_id=doc.doc_id, counts=tuple(sorted(counts.items())))


def build_transactions(doc: DocumentGraph) -> list[Transaction]:
    """One transaction per entity that participates in at least one event:
    the set of event types that entity co-occurs in."""
    by_entity: dict[str, set[str]] = {}
    for ev in doc.events:
        for part in ev.participants:
            for entity, _ in part.entity_values:
                by_entity.setdefault(entity, set()).add(ev.event_type)
    return [
        Transaction(doc_id=doc.doc_id, chain_id=entity, items=frozenset(items))
        for entity, items in sorted(by_entity.items())
    ]


# --- corpus helpers --------------------------------------------------------


def iter_corpus(path: str | Path) -> Iterator[DocumentGraph]:
    """Yield documents from a directory of *.json files or a .jsonl stream."""
    path = Path(path)
    if path.is_dir():
        for file in sorted(path.glob("*.json")):
            yield parse_document_graph(file.read_bytes())
    else:
        with path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    yield parse_document_graph(line)


def write_transactions(transactions: Iterable[Transaction], path: str | Path) -> None:
    """Transactions file: one per line as 'doc_id<TAB>chain_id<TAB>item item ...'."""
    with Path(path).open("w", encoding="utf-8") as handle:
        for t in transactions:
            handle.write(f"{t.doc_id}\t{t.chain_id}\t{' '.join(sorted(t.items))}\n")


def read_transactions(path: str | Path) -> list[Transaction]:
    out = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for n, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise DocumentFormatError(f"{path}:{n}: expected 3 tab-separated fields")
            doc_id, chain_id, items = parts
            out.append(Transaction(doc_id, chain_id, frozenset(items.split())))
    return out
