#!/usr/bin/env python3
"""Regenerate the ingest fixtures: a 10-document source corpus whose events
carry FrameNet-style type names, the rule file mapping them onto the target
ontology, and a single-event transport document used across the test suite.
"""

from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIX = ROOT / "fixtures"

MAPPING = {
    "format_version": 1,
    "rules": [
        {"source": "Arriving", "target": "Movement.Transportation.Unspecified",
         "roles": {"Goal": "Destination", "Theme": "PassengerArtifact"}},
        {"source": "Infecting", "target": "Life.Infect",
         "roles": {"Infected": "Victim", "Agent": "InfectingAgent"}},
        {"source": "Death", "target": "Life.Die", "roles": {"Protagonist": "Victim"}},
        {"source": "Cure", "target": "Medical.Treatment",
         "roles": {"Healer": "Physician", "Affliction": "Disease"}},
        {"source": "Attack", "target": "Conflict.Attack",
         "roles": {"Assailant": "Attacker", "Victim": "Target"}},
        {"source": "Arrest", "target": "Justice.ArrestJailDetain",
         "roles": {"Authorities": "Jailer", "Suspect": "Detainee"}},
        {"source": "Commerce_buy", "target": "Transaction.ExchangeBuySell",
         "roles": {"Goods": "AcquiredEntity"}},
        {"source": "Education_teaching", "target": "Cognitive.TeachingTrainingLearning",
         "roles": {"Teacher": "TeacherTrainer", "Student": "Learner"}},
    ],
}

# doc id -> [(event type, [(role, [(entity, confidence)])])]
CORPUS = {
    "d01": [
        ("Infecting", [("Infected", [("p1", 1.0)]), ("Agent", [("v1", 0.9)])]),
        ("Cure", [("Patient", [("p1", 1.0)])]),
        ("Sleep", [("Sleeper", [("p1", 1.0)])]),
    ],
    "d02": [
        ("Attack", [("Assailant", [("a1", 0.8)]), ("Victim", [("t1", 1.0)])]),
        ("Death", [("Protagonist", [("t1", 0.95)])]),
        ("Arrest", [("Suspect", [("a1", 1.0)])]),
    ],
    "d03": [
        ("Commerce_buy", [("Buyer", [("b1", 1.0)]), ("Goods", [("g1", 0.7)])]),
        ("Arriving", [("Theme", [("g1", 0.9)]), ("Goal", [("l1", 1.0)])]),
    ],
    "d04": [
        ("Education_teaching", [("Teacher", [("t1", 1.0)]), ("Student", [("s1", 0.8)])]),
        ("Motion", [("Theme", [("s1", 1.0)])]),
        ("Education_teaching", [("Teacher", [("t1", 0.9)])]),
    ],
    "d05": [
        ("Infecting", [("Infected", [("p1", 1.0)])]),
        ("Infecting", [("Infected", [("p2", 0.6), ("p3", 0.5)])]),
        ("Death", [("Protagonist", [("p1", 1.0)])]),
    ],
    "d06": [
        ("Arrest", [("Suspect", [("a1", 1.0)])]),
        ("Attack", [("Assailant", [("a1", 0.9)])]),
        ("Cure", [("Patient", [("p1", 0.8)])]),
    ],
    "d07": [
        ("Arriving", [("Theme", [("c1", 1.0)]), ("Goal", [("l1", 1.0)])]),
        ("Arriving", [("Theme", [("c1", 0.9)]), ("Goal", [("l2", 0.7)])]),
    ],
    "d08": [
        ("Commerce_buy", [("Buyer", [("b1", 1.0)])]),
        ("Attack", [("Victim", [("b1", 0.6)])]),
        ("Sleep", []),
    ],
    "d09": [
        ("Education_teaching", [("Student", [("s1", 1.0)])]),
        ("Cure", [("Patient", [("s1", 0.9)])]),
    ],
    "d10": [
        ("Death", [("Protagonist", [("p9", 1.0)])]),
        ("Infecting", [("Infected", [("p9", 0.8)])]),
        ("Motion", [("Theme", [("p9", 1.0)])]),
        ("Attack", [("Victim", [("p9", 0.5)])]),
    ],
}

PREFIX = "src:Frames"

TRANSPORT_DOC = {
    "@id": "d-transport-01",
    "events": [
        {
            "@id": "d-transport-01.e1",
            "@type": "kairos:Primitives/Events/Movement.Transportation.Unspecified",
            "confidence": 0.9,
            "participants": [
                {
                    "@id": "d-transport-01.e1.P1",
                    "role": "kairos:Primitives/Events/Movement.Transportation.Unspecified/Slots/Destination",
                    "values": [{"confidence": 1.0, "entity": "e2323a3"}],
                },
                {
                    "@id": "d-transport-01.e1.P3",
                    "role": "kairos:Primitives/Events/Movement.Transportation.Unspecified/Slots/PassengerArtifact",
                    "values": [{"confidence": 0.8, "entity": "e2323a1"}],
                },
            ],
        }
    ],
}


def doc_json(doc_id: str, events) -> dict:
    out_events = []
    for i, (etype, participants) in enumerate(events, start=1):
        ev_id = f"{doc_id}.e{i}"
        out_events.append({
            "@id": ev_id,
            "@type": f"{PREFIX}/{etype}",
            "confidence": 1.0,
            "participants": [
                {
                    "@id": f"{ev_id}.P{j}",
                    "role": f"{PREFIX}/{etype}/Slots/{role}",
                    "values": [{"entity": e, "confidence": c} for e, c in values],
                }
                for j, (role, values) in enumerate(participants, start=1)
            ],
        })
    return {"@id": doc_id, "events": out_events}


def main():
    corpus_dir = FIX / "source_corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    for doc_id, events in CORPUS.items():
        path = corpus_dir / f"{doc_id}.json"
        path.write_text(json.dumps(doc_json(doc_id, events), indent=2, sort_keys=True) + "\n")
    (FIX / "mapping.json").write_text(json.dumps(MAPPING, indent=2, sort_keys=True) + "\n")
    (FIX / "doc_transport.json").write_text(
        json.dumps(TRANSPORT_DOC, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(CORPUS)} corpus docs, mapping.json, doc_transport.json")


if __name__ == "__main__":
    main()
