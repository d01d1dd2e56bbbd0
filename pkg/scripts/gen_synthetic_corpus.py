#!/usr/bin/env python3
"""Regenerate fixtures/synthetic/corpus.jsonl: a 120-document extracted-event
corpus over the fixture ontology.

Documents are sampled from scenario-flavored event pools with shared entity
pools, so co-referring arguments (and hence non-trivial transactions) occur at
a realistic rate. Fully seeded: reruns are byte-identical.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from schemakit.ontology import load_ontology

ROOT = Path(__file__).resolve().parent.parent

SCENARIOS = {
    "disease": [
        "Disaster.DiseaseOutbreak", "Life.Infect", "Medical.Diagnosis",
        "Medical.Treatment", "Medical.Vaccinate", "Life.Recover", "Life.Die",
        "Medical.Hospitalization", "Medical.Quarantine",
    ],
    "justice": [
        "Crime.GenericCrime", "Justice.InvestigateCrime", "Justice.ArrestJailDetain",
        "Justice.ChargeIndict", "Justice.TrialHearing", "Justice.Convict",
        "Justice.Sentence", "Justice.Acquit", "Justice.ReleaseParole",
    ],
    "conflict": [
        "Conflict.Attack", "Life.Die", "Life.Injure",
        "Movement.Transportation.Evacuation", "Transaction.AidBetweenGovernments",
        "ArtifactExistence.DamageDestroy",
    ],
    "commerce": [
        "Transaction.ExchangeBuySell", "Movement.Transportation.Unspecified",
        "ArtifactExistence.ManufactureAssemble", "Transaction.Loan",
        "Transaction.Taxation",
    ],
    "election": [
        "Conflict.Demonstrate", "Contact.Broadcast", "Personnel.Elect",
        "Personnel.Nominate", "Personnel.StartPosition", "Personnel.EndPosition",
    ],
    "education": [
        "Cognitive.TeachingTrainingLearning", "Contact.Contact",
        "Cognitive.Research", "Contact.Meet",
    ],
}

N_DOCS = 120
SEED = 20_220_517


def main():
    ontology = load_ontology((ROOT / "fixtures" / "ontology.json").read_bytes())
    rng = random.Random(SEED)
    out_path = ROOT / "fixtures" / "synthetic" / "corpus.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    scenario_names = sorted(SCENARIOS)
    lines = []
    for i in range(N_DOCS):
        doc_id = f"syn-{i:04d}"
        scenario = scenario_names[i % len(scenario_names)]
        pool = SCENARIOS[scenario]
        n_events = rng.randint(2, 10)
        entities = [f"{doc_id}-ent{k}" for k in range(rng.randint(2, 5))]
        events = []
        for j in range(n_events):
            etype = rng.choice(pool)
            roles = ontology.event_type(etype).role_names
            chosen_roles = rng.sample(roles, k=min(len(roles), rng.randint(1, 3)))
            participants = []
            for r, role in enumerate(sorted(chosen_roles)):
                participants.append({
                    "@id": f"{doc_id}.e{j}.P{r}",
                    "role": role,
                    "values": [{
                        "entity": rng.choice(entities),
                        "confidence": round(rng.uniform(0.6, 1.0), 2),
                    }],
                })
            events.append({
                "@id": f"{doc_id}.e{j}",
                "@type": etype,
                "confidence": round(rng.uniform(0.6, 1.0), 2),
                "participants": participants,
            })
        lines.append(json.dumps(
            {"@id": doc_id, "scenario": scenario, "events": events}, sort_keys=True))
    out_path.write_text("\n".join(lines) + "\n")
    print(f"wrote {out_path} ({N_DOCS} docs)")


if __name__ == "__main__":
    main()
