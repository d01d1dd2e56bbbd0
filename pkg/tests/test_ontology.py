from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from schemakit.ontology import (
    ROOT_CATEGORY,
    OntologyFormatError,
    OntologyValidationError,
    event_types_in_category,
    load_ontology,
    ontology_to_document,
)

from .conftest import dumps, minimal_ontology_doc


def test_minimal_ontology_loads(minimal_doc):
    ont = load_ontology(dumps(minimal_doc))
    assert len(ont.event_types) == 1
    assert len(ont.entity_types) == 1
    assert len(ont.relation_types) == 0


def test_missing_entity_type_reported_by_name(minimal_doc):
    minimal_doc["events"][0]["roles"][0]["types"] = ["per2"]
    with pytest.raises(OntologyValidationError) as exc:
        load_ontology(dumps(minimal_doc))
    assert any("per2" in issue for issue in exc.value.issues)


def test_kairos_like_fixture_counts(ontology):
    assert len(ontology.event_types) == 67
    assert len(ontology.entity_types) == 24
    assert len(ontology.relation_types) == 46


def test_validation_collects_every_issue(minimal_doc):
    minimal_doc["entities"].append({"id": "per", "label": "Dup"})
    minimal_doc["events"][0]["roles"][0]["types"] = ["missing1"]
    minimal_doc["relations"] = [
        {"id": "R", "label": "R", "subject_types": ["missing2"], "object_types": ["per"]}
    ]
    with pytest.raises(OntologyValidationError) as exc:
        load_ontology(dumps(minimal_doc))
    text = " ".join(exc.value.issues)
    assert "duplicate entity type id" in text
    assert "missing1" in text and "missing2" in text


def test_malformed_document_is_a_format_error():
    with pytest.raises(OntologyFormatError):
        load_ontology(b"{not json")
    with pytest.raises(OntologyFormatError):
        load_ontology(dumps({"entities": []}))  # format_version and sections missing


def test_root_category_returns_all(ontology):
    assert event_types_in_category(ontology, ROOT_CATEGORY) == list(ontology.event_types)


def test_unknown_category_raises(ontology):
    with pytest.raises(KeyError):
        event_types_in_category(ontology, "NoSuchCategory")


def test_leaf_category_single_member(minimal_doc):
    ont = load_ontology(dumps(minimal_doc))
    assert [e.id for e in event_types_in_category(ont, "Test")] == ["Test.Event"]


def test_medical_category_members_match_hand_enumeration(ontology):
    # Hand enumeration of fixtures/ontology.json.
    assert [e.id for e in event_types_in_category(ontology, "Medical")] == [
        "Medical.Diagnosis",
        "Medical.Intervention",
        "Medical.Treatment",
        "Medical.Vaccinate",
        "Medical.Quarantine",
        "Medical.Hospitalization",
    ]


def test_nested_category_membership(ontology):
    nested = event_types_in_category(ontology, "Movement.Transportation")
    top = event_types_in_category(ontology, "Movement")
    assert nested == top
    assert all(e.id.startswith("Movement.Transportation.") for e in nested)


def test_leaf_cannot_also_be_interior(minimal_doc):
    minimal_doc["events"].append(
        {"id": "Test.Sub.Event", "category": ["Test", "Test.Sub"], "label": "x", "roles": []}
    )
    with pytest.raises(OntologyValidationError) as exc:
        load_ontology(dumps(minimal_doc))
    assert any("subcategories" in issue for issue in exc.value.issues)


def test_conflicting_category_parents(minimal_doc):
    minimal_doc["events"].append(
        {"id": "E2", "category": ["Other", "Test2"], "label": "x", "roles": []}
    )
    minimal_doc["events"].append(
        {"id": "E3", "category": ["Test2"], "label": "x", "roles": []}
    )
    with pytest.raises(OntologyValidationError) as exc:
        load_ontology(dumps(minimal_doc))
    assert any("conflicting parents" in issue for issue in exc.value.issues)


def test_min_fillers_above_max_rejected(minimal_doc):
    minimal_doc["events"][0]["roles"][0]["min"] = 3
    minimal_doc["events"][0]["roles"][0]["max"] = 1
    with pytest.raises(OntologyValidationError):
        load_ontology(dumps(minimal_doc))


def test_load_is_deterministic(ontology, fixtures_dir):
    raw = (fixtures_dir / "ontology.json").read_bytes()
    assert load_ontology(raw) == load_ontology(raw)


def test_document_round_trip(ontology):
    doc = ontology_to_document(ontology)
    again = load_ontology(json.dumps(doc).encode())
    assert ontology_to_document(again) == doc


@st.composite
def random_ontology_docs(draw):
    n_entities = draw(st.integers(1, 6))
    entity_ids = [f"ent{i}" for i in range(n_entities)]
    n_events = draw(st.integers(1, 8))
    events = []
    for i in range(n_events):
        roles = []
        for j in range(draw(st.integers(0, 3))):
            allowed = draw(st.lists(st.sampled_from(entity_ids), min_size=1, unique=True))
            roles.append({"name": f"Role{j}", "types": allowed, "min": 0, "max": None})
        events.append(
            {"id": f"Cat{i % 3}.Ev{i}", "category": [f"Cat{i % 3}"], "label": f"Ev{i}", "roles": roles}
        )
    return {
        "format_version": 1,
        "entities": [{"id": e, "label": e} for e in entity_ids],
        "events": events,
        "relations": [],
    }


@given(random_ontology_docs())
def test_loaded_ontologies_have_no_dangling_role_types(doc):
    ont = load_ontology(json.dumps(doc).encode())
    for ev in ont.event_types:
        for slot in ev.roles:
            for t in slot.allowed_entity_types:
                assert ont.entity_type(t) is not None
