#!/usr/bin/env python3
"""Regenerate the hand-written schema fixtures under fixtures/schemas/.

Writing them through the canonical serializer keeps the files byte-stable.
"""

from __future__ import annotations

from pathlib import Path

from schemakit.ontology import load_ontology
from schemakit.schema_model import (
    OrderingConstraint,
    Participant,
    Provenance,
    RelationInstance,
    Schema,
    make_step,
    serialize,
    validate_schema,
)

ROOT = Path(__file__).resolve().parent.parent


def cook_meal() -> Schema:
    return Schema(
        id="cook_meal",
        name="Cook Meal",
        description="Someone shops for ingredients, prepares a meal, and either "
                    "serves it at home or has it delivered.",
        participants=(
            Participant("cook", "Cook", frozenset({"per"}), frozenset({"Q156839"})),
            Participant("grocer", "Grocer", frozenset({"per", "org"})),
            Participant("ingredients", "Ingredients", frozenset({"com", "nat"})),
            Participant("meal", "Meal", frozenset({"com"})),
            Participant("cooking_tools", "CookingTools", frozenset({"com"})),
            Participant("sink", "Sink", frozenset({"fac", "com"})),
            Participant("market", "Market", frozenset({"fac"})),
            Participant("kitchen", "Kitchen", frozenset({"fac"})),
            Participant("courier", "Courier", frozenset({"per", "org"})),
            Participant("dining_room", "DiningRoom", frozenset({"fac"})),
            Participant("customer_home", "CustomerHome", frozenset({"fac", "loc"})),
        ),
        steps=(
            make_step(
                "buy_ingredients", "Transaction.ExchangeBuySell",
                {"Buyer": ["cook"], "Seller": ["grocer"],
                 "AcquiredEntity": ["ingredients"], "Place": ["market"]},
                "Cook buys Ingredients from Grocer at Market",
            ),
            make_step(
                "prepare_meal", "ArtifactExistence.ManufactureAssemble",
                {"Maker": ["cook"], "Components": ["ingredients"], "Product": ["meal"],
                 "Instrument": ["cooking_tools", "sink"], "Place": ["kitchen"]},
                "Cook prepares Meal from Ingredients with CookingTools and Sink",
            ),
            make_step(
                "serve_meal", "Movement.Transportation.Unspecified",
                {"Transporter": ["cook"], "PassengerArtifact": ["meal"],
                 "Destination": ["dining_room"]},
                "Cook carries Meal to DiningRoom",
            ),
            make_step(
                "deliver_meal", "Movement.Transportation.Unspecified",
                {"Transporter": ["courier"], "PassengerArtifact": ["meal"],
                 "Destination": ["customer_home"]},
                "Courier delivers Meal to CustomerHome",
            ),
        ),
        relations=(
            RelationInstance("Responsibility.ClaimResponsibility", "cook", "meal"),
        ),
        orderings=(
            OrderingConstraint("linear", ("buy_ingredients", "prepare_meal", "serve_meal")),
            OrderingConstraint("linear", ("prepare_meal", "deliver_meal")),
            OrderingConstraint("exclusive_group", ("serve_meal", "deliver_meal")),
        ),
        provenance=Provenance(kind="skeleton_fleshed", skeleton_id="skel-cook-meal"),
    )


def remote_teaching() -> Schema:
    return Schema(
        id="remote_teaching",
        name="Remote Teaching",
        description="A professor lectures a class online, then holds a seminar "
                    "discussion with the students and a teaching assistant.",
        participants=(
            Participant("professor", "Professor", frozenset({"per"})),
            Participant("ta", "TA", frozenset({"per"})),
            Participant("students", "Students", frozenset({"per"})),
            Participant("class_topic", "ClassTopic", frozenset({"abs", "inf"})),
            Participant("video_conference_app", "VideoConferenceApp", frozenset({"com", "inf"})),
            Participant("university", "University", frozenset({"org"})),
        ),
        steps=(
            make_step(
                "lecture", "Cognitive.TeachingTrainingLearning",
                {"TeacherTrainer": ["professor"], "Learner": ["students"],
                 "FieldOfKnowledge": ["class_topic"], "Means": ["video_conference_app"],
                 "Institution": ["university"]},
                "Professor lectures Students on ClassTopic over VideoConferenceApp",
            ),
            make_step(
                "seminar", "Contact.Contact",
                {"Participant": ["professor", "ta", "students"],
                 "Topic": ["class_topic"], "Instrument": ["video_conference_app"]},
                "Professor and TA discuss ClassTopic with Students over VideoConferenceApp",
            ),
        ),
        relations=(
            RelationInstance("OrganizationAffiliation.EmploymentMembership",
                             "professor", "university"),
        ),
        orderings=(OrderingConstraint("linear", ("lecture", "seminar")),),
        provenance=Provenance(kind="manual"),
    )


def main():
    ontology = load_ontology((ROOT / "fixtures" / "ontology.json").read_bytes())
    out_dir = ROOT / "fixtures" / "schemas"
    out_dir.mkdir(parents=True, exist_ok=True)
    for schema in (cook_meal(), remote_teaching()):
        report = validate_schema(schema, ontology)
        assert report.ok, [str(i) for i in report.errors]
        path = out_dir / f"{schema.id}.json"
        path.write_bytes(serialize(schema))
        print(f"wrote {path} ({len(schema.steps)} steps, ok={report.ok}, "
              f"warnings={len(report.warnings)})")


if __name__ == "__main__":
    main()
