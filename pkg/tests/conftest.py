from __future__ import annotations

import json
from pathlib import Path

import pytest

from schemakit.ontology import Ontology, load_ontology
from schemakit.schema_model import Schema, deserialize

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def ontology() -> Ontology:
    return load_ontology((FIXTURES / "ontology.json").read_bytes())


@pytest.fixture(scope="session")
def cook_meal(ontology) -> Schema:
    return deserialize((FIXTURES / "schemas" / "cook_meal.json").read_bytes())


@pytest.fixture(scope="session")
def remote_teaching(ontology) -> Schema:
    return deserialize((FIXTURES / "schemas" / "remote_teaching.json").read_bytes())


@pytest.fixture()
def fixtures_dir() -> Path:
    return FIXTURES


def minimal_ontology_doc() -> dict:
    return {
        "format_version": 1,
        "entities": [{"id": "per", "label": "Person"}],
        "events": [
            {
                "id": "Test.Event",
                "category": ["Test"],
                "label": "Event",
                "roles": [{"name": "Agent", "types": ["per"], "min": 0, "max": None}],
            }
        ],
        "relations": [],
    }


@pytest.fixture()
def minimal_doc() -> dict:
    return minimal_ontology_doc()


def dumps(doc: dict) -> bytes:
    return json.dumps(doc).encode()
