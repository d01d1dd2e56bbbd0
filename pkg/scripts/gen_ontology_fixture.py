#!/usr/bin/env python3
"""Regenerate fixtures/ontology.json.

The fixture mirrors the shape of the DARPA KAIROS Phase 1 event ontology:
67 event types in a category hierarchy, 24 coarse entity types, and 46
binary relation types. The inventory itself is hand-written here.
"""

from __future__ import annotations

import json
from pathlib import Path

ENTITIES = [
    ("abs", "Abstract", "Intangible objects: ideas, plans, diseases metaphorically, alleged crimes"),
    ("aml", "Animal", "Non-human animals"),
    ("bal", "Ballot", "Physical or electronic vote records"),
    ("bod", "BodyPart", "Identifiable parts of a body"),
    ("com", "CommercialItem", "Manufactured goods and products"),
    ("fac", "Facility", "Buildings and other permanent man-made structures"),
    ("gpe", "GeopoliticalEntity", "Geographical regions with a government"),
    ("inf", "Information", "Documents, data, statements, software content"),
    ("law", "Law", "Statutes, treaties, regulations"),
    ("loc", "Location", "Geographical places without a government"),
    ("mhi", "MedicalHealthIssue", "Diseases, injuries, and other health conditions"),
    ("mon", "Money", "Sums and instruments of currency"),
    ("nat", "NaturalMaterial", "Naturally occurring substances and phenomena"),
    ("org", "Organization", "Companies, agencies, institutions, groups"),
    ("per", "Person", "Individual humans or groups of humans"),
    ("pla", "Plant", "Individual plants or plant collections"),
    ("pth", "Pathogen", "Infectious biological agents"),
    ("res", "ElectionResults", "Outcomes of votes and elections"),
    ("sen", "JudicialSentence", "Punishments handed down by a court"),
    ("sid", "ConflictSide", "Parties to a conflict that are not formal organizations"),
    ("ttl", "Title", "Occupational or honorific titles"),
    ("val", "NumericValue", "Numbers, quantities, percentages"),
    ("veh", "Vehicle", "Devices for transporting people or goods"),
    ("wea", "Weapon", "Devices designed to inflict harm"),
]

# (event id, category path, [(role, [entity types])]).  The leaf of the
# category path is the category that directly holds the event type.
EVENTS = [
    ("ArtifactExistence.ManufactureAssemble", ["ArtifactExistence"], [
        ("Maker", ["per", "org", "gpe"]),
        ("Components", ["com", "nat", "veh", "wea", "pla", "aml"]),
        ("Product", ["com", "veh", "wea", "fac", "inf"]),
        ("Instrument", ["com", "veh", "wea", "fac"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("ArtifactExistence.DamageDestroy", ["ArtifactExistence"], [
        ("Damager", ["per", "org", "gpe", "sid", "nat"]),
        ("Artifact", ["com", "fac", "veh", "wea", "bod", "inf"]),
        ("Instrument", ["wea", "veh", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("ArtifactExistence.DisableDefuse", ["ArtifactExistence"], [
        ("Disabler", ["per", "org", "sid"]),
        ("Artifact", ["wea", "veh", "com", "inf"]),
        ("Instrument", ["com", "wea"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("ArtifactExistence.Shortage", ["ArtifactExistence"], [
        ("Experiencer", ["per", "org", "gpe", "loc"]),
        ("Supply", ["com", "nat", "mon"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("ArtifactExistence.ConstructionRenovation", ["ArtifactExistence"], [
        ("Builder", ["per", "org", "gpe"]),
        ("Artifact", ["fac"]),
        ("Components", ["com", "nat"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.IdentifyCategorize", ["Cognitive"], [
        ("Identifier", ["per", "org", "gpe"]),
        ("IdentifiedObject", ["per", "org", "com", "fac", "loc", "veh", "wea", "inf", "abs"]),
        ("IdentifiedRole", ["abs", "ttl"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.Inspection", ["Cognitive"], [
        ("Inspector", ["per", "org", "gpe"]),
        ("InspectedEntity", ["per", "org", "com", "fac", "loc", "veh", "wea"]),
        ("ObservedObject", ["com", "wea", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.Research", ["Cognitive"], [
        ("Researcher", ["per", "org"]),
        ("Subject", ["abs", "inf", "mhi", "pth"]),
        ("Means", ["com", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.TeachingTrainingLearning", ["Cognitive"], [
        ("TeacherTrainer", ["per", "org"]),
        ("Learner", ["per", "org"]),
        ("FieldOfKnowledge", ["abs", "inf"]),
        ("Means", ["com", "inf"]),
        ("Institution", ["org", "fac"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.Forecast", ["Cognitive"], [
        ("Forecaster", ["per", "org", "gpe"]),
        ("Prediction", ["abs", "inf"]),
        ("Basis", ["inf", "abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Cognitive.Deliberation", ["Cognitive"], [
        ("Deliberator", ["per", "org", "gpe"]),
        ("Topic", ["abs", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Conflict.Attack", ["Conflict"], [
        ("Attacker", ["per", "org", "gpe", "sid"]),
        ("Target", ["per", "org", "gpe", "sid", "fac", "loc", "veh", "com", "bod"]),
        ("Instrument", ["wea", "veh", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Conflict.Defeat", ["Conflict"], [
        ("Victor", ["per", "org", "gpe", "sid"]),
        ("Defeated", ["per", "org", "gpe", "sid"]),
        ("ConflictOrElection", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Conflict.Demonstrate", ["Conflict"], [
        ("Demonstrator", ["per", "org", "sid"]),
        ("Target", ["org", "gpe", "fac"]),
        ("Topic", ["abs", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Conflict.Coup", ["Conflict"], [
        ("DeposedEntity", ["per", "org", "gpe"]),
        ("DeposingEntity", ["per", "org", "sid"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Conflict.Riot", ["Conflict"], [
        ("Rioter", ["per", "sid"]),
        ("Target", ["per", "org", "gpe", "fac"]),
        ("Instrument", ["wea", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.Contact", ["Contact"], [
        ("Participant", ["per", "org", "gpe", "sid"]),
        ("Topic", ["abs", "inf"]),
        ("Instrument", ["com", "inf", "fac"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.Meet", ["Contact"], [
        ("Participant", ["per", "org", "gpe", "sid"]),
        ("Topic", ["abs", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.Correspondence", ["Contact"], [
        ("Participant", ["per", "org", "gpe", "sid"]),
        ("Topic", ["abs", "inf"]),
        ("Instrument", ["com", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.Broadcast", ["Contact"], [
        ("Communicator", ["per", "org", "gpe", "sid"]),
        ("Recipient", ["per", "org", "gpe", "sid"]),
        ("Topic", ["abs", "inf"]),
        ("Instrument", ["com", "inf", "fac"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.RequestCommand", ["Contact"], [
        ("Communicator", ["per", "org", "gpe", "sid"]),
        ("Recipient", ["per", "org", "gpe", "sid"]),
        ("Content", ["abs", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Contact.ThreatenCoerce", ["Contact"], [
        ("Communicator", ["per", "org", "gpe", "sid"]),
        ("Recipient", ["per", "org", "gpe", "sid"]),
        ("Content", ["abs", "inf"]),
        ("Instrument", ["wea", "com", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Control.ImpedeInterfereWith", ["Control"], [
        ("Impeder", ["per", "org", "gpe", "sid", "nat"]),
        ("ImpededEvent", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Control.Blockade", ["Control"], [
        ("Blockader", ["per", "org", "gpe", "sid"]),
        ("BlockedEntity", ["per", "org", "gpe", "veh", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Control.Censorship", ["Control"], [
        ("Censor", ["per", "org", "gpe"]),
        ("CensoredContent", ["inf", "abs"]),
        ("Medium", ["com", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Disaster.Crash", ["Disaster"], [
        ("Vehicle", ["veh"]),
        ("DriverPassenger", ["per"]),
        ("CrashObject", ["veh", "fac", "loc", "nat", "aml"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Disaster.DiseaseOutbreak", ["Disaster"], [
        ("Disease", ["mhi", "pth"]),
        ("Victim", ["per", "aml"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Disaster.FireExplosion", ["Disaster"], [
        ("FireExplosionObject", ["fac", "veh", "com", "wea", "nat"]),
        ("Instrument", ["wea", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Disaster.NaturalDisaster", ["Disaster"], [
        ("Phenomenon", ["nat", "abs"]),
        ("Victim", ["per", "aml", "org"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Crime.GenericCrime", ["Crime"], [
        ("Perpetrator", ["per", "org", "sid"]),
        ("Victim", ["per", "org", "gpe", "com"]),
        ("Instrument", ["wea", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Crime.Theft", ["Crime"], [
        ("Thief", ["per", "org"]),
        ("StolenItem", ["com", "mon", "veh", "wea", "inf"]),
        ("Victim", ["per", "org", "gpe"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Crime.Fraud", ["Crime"], [
        ("Fraudster", ["per", "org"]),
        ("Victim", ["per", "org", "gpe"]),
        ("Gain", ["mon", "com", "inf"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Crime.Kidnapping", ["Crime"], [
        ("Kidnapper", ["per", "org", "sid"]),
        ("Victim", ["per"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.ArrestJailDetain", ["Justice"], [
        ("Jailer", ["per", "org", "gpe"]),
        ("Detainee", ["per"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.ChargeIndict", ["Justice"], [
        ("Prosecutor", ["per", "org", "gpe"]),
        ("Defendant", ["per", "org"]),
        ("JudgeCourt", ["per", "org"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.TrialHearing", ["Justice"], [
        ("Prosecutor", ["per", "org", "gpe"]),
        ("Defendant", ["per", "org"]),
        ("JudgeCourt", ["per", "org"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.Convict", ["Justice"], [
        ("JudgeCourt", ["per", "org"]),
        ("Defendant", ["per", "org"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.Acquit", ["Justice"], [
        ("JudgeCourt", ["per", "org"]),
        ("Defendant", ["per", "org"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.Sentence", ["Justice"], [
        ("JudgeCourt", ["per", "org"]),
        ("Defendant", ["per", "org"]),
        ("Sentence", ["sen"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.ReleaseParole", ["Justice"], [
        ("JudgeCourt", ["per", "org", "gpe"]),
        ("Defendant", ["per"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Justice.InvestigateCrime", ["Justice"], [
        ("Investigator", ["per", "org", "gpe"]),
        ("Defendant", ["per", "org"]),
        ("Crime", ["abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Die", ["Life"], [
        ("Victim", ["per", "aml"]),
        ("Killer", ["per", "org", "gpe", "sid", "nat"]),
        ("Instrument", ["wea", "veh", "com", "pth"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Infect", ["Life"], [
        ("Victim", ["per", "aml"]),
        ("InfectingAgent", ["pth", "per", "aml"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Injure", ["Life"], [
        ("Victim", ["per", "aml"]),
        ("Injurer", ["per", "org", "gpe", "sid", "nat"]),
        ("Instrument", ["wea", "veh", "com"]),
        ("BodyPart", ["bod"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Recover", ["Life"], [
        ("Victim", ["per", "aml"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Born", ["Life"], [
        ("Person", ["per"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Life.Marry", ["Life"], [
        ("Spouse", ["per"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Diagnosis", ["Medical"], [
        ("Physician", ["per", "org"]),
        ("Patient", ["per", "aml"]),
        ("Disease", ["mhi"]),
        ("SymptomSign", ["abs", "mhi", "bod"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Intervention", ["Medical"], [
        ("Physician", ["per", "org"]),
        ("Patient", ["per", "aml"]),
        ("Instrument", ["com"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Treatment", ["Medical"], [
        ("Physician", ["per", "org"]),
        ("Patient", ["per", "aml"]),
        ("Treatment", ["com", "abs"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Vaccinate", ["Medical"], [
        ("Physician", ["per", "org", "gpe"]),
        ("Patient", ["per", "aml"]),
        ("VaccineTarget", ["pth", "mhi"]),
        ("VaccineMethod", ["com", "abs"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Quarantine", ["Medical"], [
        ("Authority", ["per", "org", "gpe"]),
        ("Patient", ["per", "aml"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Medical.Hospitalization", ["Medical"], [
        ("Admitter", ["per", "org"]),
        ("Patient", ["per", "aml"]),
        ("Disease", ["mhi"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Movement.Transportation.Unspecified", ["Movement", "Movement.Transportation"], [
        ("Transporter", ["per", "org", "gpe", "veh"]),
        ("PassengerArtifact", ["per", "aml", "com", "veh", "wea", "mon"]),
        ("Vehicle", ["veh"]),
        ("Origin", ["fac", "loc", "gpe"]),
        ("Destination", ["fac", "loc", "gpe"]),
    ]),
    ("Movement.Transportation.Evacuation", ["Movement", "Movement.Transportation"], [
        ("Transporter", ["per", "org", "gpe"]),
        ("PassengerArtifact", ["per", "aml", "com"]),
        ("Vehicle", ["veh"]),
        ("Origin", ["fac", "loc", "gpe"]),
        ("Destination", ["fac", "loc", "gpe"]),
    ]),
    ("Movement.Transportation.IllegalTransportation", ["Movement", "Movement.Transportation"], [
        ("Transporter", ["per", "org", "sid"]),
        ("PassengerArtifact", ["per", "aml", "com", "wea", "mon"]),
        ("Vehicle", ["veh"]),
        ("Origin", ["fac", "loc", "gpe"]),
        ("Destination", ["fac", "loc", "gpe"]),
    ]),
    ("Movement.Transportation.PreventPassage", ["Movement", "Movement.Transportation"], [
        ("Preventer", ["per", "org", "gpe", "sid"]),
        ("Transporter", ["per", "org", "gpe", "veh"]),
        ("PassengerArtifact", ["per", "aml", "com", "wea"]),
        ("Origin", ["fac", "loc", "gpe"]),
        ("Destination", ["fac", "loc", "gpe"]),
    ]),
    ("Personnel.StartPosition", ["Personnel"], [
        ("Employee", ["per"]),
        ("PlaceOfEmployment", ["org", "gpe", "fac"]),
        ("Position", ["ttl"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Personnel.EndPosition", ["Personnel"], [
        ("Employee", ["per"]),
        ("PlaceOfEmployment", ["org", "gpe", "fac"]),
        ("Position", ["ttl"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Personnel.Elect", ["Personnel"], [
        ("Voter", ["per", "org", "gpe"]),
        ("Candidate", ["per", "org"]),
        ("Position", ["ttl"]),
        ("Ballot", ["bal"]),
        ("Result", ["res"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Personnel.Nominate", ["Personnel"], [
        ("Nominator", ["per", "org", "gpe"]),
        ("Candidate", ["per", "org"]),
        ("Position", ["ttl"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.ExchangeBuySell", ["Transaction"], [
        ("Buyer", ["per", "org", "gpe"]),
        ("Seller", ["per", "org", "gpe"]),
        ("AcquiredEntity", ["com", "veh", "wea", "fac", "inf", "nat", "pla", "aml"]),
        ("Payment", ["mon", "com"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.Donation", ["Transaction"], [
        ("Giver", ["per", "org", "gpe"]),
        ("Recipient", ["per", "org", "gpe"]),
        ("ArtifactMoney", ["mon", "com", "veh", "wea"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.AidBetweenGovernments", ["Transaction"], [
        ("Giver", ["gpe", "org"]),
        ("Recipient", ["gpe", "org"]),
        ("ArtifactMoney", ["mon", "com", "veh", "wea"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.Loan", ["Transaction"], [
        ("Lender", ["per", "org", "gpe"]),
        ("Borrower", ["per", "org", "gpe"]),
        ("ArtifactMoney", ["mon", "com"]),
        ("Collateral", ["com", "fac", "veh"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.Seizure", ["Transaction"], [
        ("Seizer", ["per", "org", "gpe", "sid"]),
        ("SeizedEntity", ["com", "mon", "veh", "wea", "fac"]),
        ("Owner", ["per", "org", "gpe"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
    ("Transaction.Taxation", ["Transaction"], [
        ("Authority", ["gpe", "org"]),
        ("Taxpayer", ["per", "org", "gpe"]),
        ("Amount", ["mon", "val"]),
        ("Place", ["fac", "loc", "gpe"]),
    ]),
]

RELATIONS = [
    ("Physical.LocatedNear", ["per", "org", "com", "fac", "loc", "gpe", "veh", "wea", "aml", "pla"], ["fac", "loc", "gpe"]),
    ("Physical.Resident", ["per"], ["fac", "loc", "gpe"]),
    ("Physical.OrganizationHeadquarters", ["org"], ["fac", "loc", "gpe"]),
    ("Physical.OrganizationLocationOrigin", ["org"], ["loc", "gpe"]),
    ("Physical.MadeOf", ["com", "fac", "veh", "wea"], ["nat", "com"]),
    ("PartWhole.Subsidiary", ["org"], ["org", "gpe"]),
    ("PartWhole.Membership", ["per", "org", "gpe"], ["org", "sid"]),
    ("PartWhole.PartOfComponent", ["com", "veh", "wea", "fac", "bod"], ["com", "veh", "wea", "fac", "per", "aml"]),
    ("PartWhole.TerritoryOf", ["loc", "gpe", "fac"], ["gpe"]),
    ("PersonalSocial.Business", ["per"], ["per"]),
    ("PersonalSocial.Family", ["per"], ["per"]),
    ("PersonalSocial.RoleTitle", ["per"], ["ttl"]),
    ("PersonalSocial.EducationalAffiliation", ["per"], ["org", "fac"]),
    ("PersonalSocial.Unspecified", ["per"], ["per"]),
    ("OrganizationAffiliation.EmploymentMembership", ["per"], ["org", "gpe", "fac"]),
    ("OrganizationAffiliation.Founder", ["per", "org"], ["org", "gpe"]),
    ("OrganizationAffiliation.Leadership", ["per"], ["org", "gpe", "sid"]),
    ("OrganizationAffiliation.InvestorShareholder", ["per", "org", "gpe"], ["org", "com"]),
    ("OrganizationAffiliation.StudentAlum", ["per"], ["org"]),
    ("GeneralAffiliation.Sponsorship", ["per", "org", "sid"], ["org", "gpe", "per"]),
    ("GeneralAffiliation.CitizenOf", ["per"], ["gpe"]),
    ("GeneralAffiliation.EthnicityReligion", ["per", "org"], ["abs"]),
    ("GeneralAffiliation.NationalityOfEntity", ["per", "org", "com", "veh", "fac"], ["gpe"]),
    ("GeneralAffiliation.OwnershipPossession", ["per", "org", "gpe"], ["com", "fac", "veh", "wea", "mon", "inf", "pla", "aml"]),
    ("GeneralAffiliation.ControlTerritory", ["per", "org", "gpe", "sid"], ["loc", "gpe", "fac"]),
    ("Responsibility.ClaimResponsibility", ["per", "org", "gpe", "sid"], ["abs", "com", "inf", "fac"]),
    ("Responsibility.CauseEffect", ["abs", "nat", "pth", "per", "org"], ["abs", "mhi"]),
    ("Responsibility.Blame", ["per", "org", "gpe", "sid"], ["per", "org", "gpe", "sid"]),
    ("Information.TopicOf", ["inf"], ["abs", "per", "org", "gpe", "loc", "fac", "mhi", "pth"]),
    ("Information.SourceOf", ["inf"], ["per", "org", "gpe"]),
    ("Information.EvidenceFor", ["inf"], ["abs"]),
    ("Information.Contradicts", ["inf"], ["inf", "abs"]),
    ("Measurement.Count", ["per", "org", "com", "veh", "wea", "aml", "pla", "fac"], ["val"]),
    ("Measurement.Price", ["com", "fac", "veh", "wea", "pla"], ["mon", "val"]),
    ("Measurement.Duration", ["abs"], ["val"]),
    ("Medical.SymptomOf", ["mhi", "abs", "bod"], ["mhi", "pth"]),
    ("Medical.TreatmentFor", ["com", "abs"], ["mhi"]),
    ("Medical.CarrierOf", ["per", "aml", "com", "nat"], ["pth", "mhi"]),
    ("Legal.AccusedOf", ["per", "org"], ["abs"]),
    ("Legal.GovernedBy", ["per", "org", "gpe", "com", "fac"], ["law", "gpe"]),
    ("Legal.SentencedTo", ["per", "org"], ["sen"]),
    ("Conflict.AlliedWith", ["per", "org", "gpe", "sid"], ["per", "org", "gpe", "sid"]),
    ("Conflict.OpposedTo", ["per", "org", "gpe", "sid"], ["per", "org", "gpe", "sid"]),
    ("Conflict.ArmedWith", ["per", "org", "gpe", "sid"], ["wea"]),
    ("Communication.SpokespersonFor", ["per"], ["org", "gpe", "sid", "per"]),
    ("Communication.AuthorOf", ["per", "org"], ["inf"]),
]


def build_document() -> dict:
    return {
        "format_version": 1,
        "entities": [
            {"id": i, "label": label, "description": desc} for i, label, desc in ENTITIES
        ],
        "events": [
            {
                "id": ev_id,
                "category": path,
                "label": ev_id.split(".")[-1],
                "roles": [
                    {"name": name, "types": types, "min": 0, "max": None}
                    for name, types in roles
                ],
            }
            for ev_id, path, roles in EVENTS
        ],
        "relations": [
            {
                "id": rel_id,
                "label": rel_id.split(".")[-1],
                "subject_types": subj,
                "object_types": obj,
            }
            for rel_id, subj, obj in RELATIONS
        ],
    }


def main():
    out = Path(__file__).resolve().parent.parent / "fixtures" / "ontology.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    doc = build_document()
    assert len(doc["events"]) == 67, len(doc["events"])
    assert len(doc["entities"]) == 24, len(doc["entities"])
    assert len(doc["relations"]) == 46, len(doc["relations"])
    out.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out} ({len(doc['events'])} events, {len(doc['entities'])} entities, "
          f"{len(doc['relations'])} relations)")


if __name__ == "__main__":
    main()
