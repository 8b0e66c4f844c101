#!/usr/bin/env python3
"""Regenerate the bundled synthetic corpus (data/synthetic_corpus.jsonl).

The corpus has 24 documents and three synthetic generation systems with
known error profiles:

  model-paraphrase     keeps every source fact, rewords predicates
  model-omission       drops a fixed share of source facts
  model-hallucination  drops the same facts and fabricates new ones

By construction the mean F1 ordering paraphrase > omission > hallucination
must hold, which the acceptance suite asserts. Generation is fully seeded;
rerunning this script reproduces the file byte for byte.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

SEED = 20240811
NUM_DOCS = 24

PEOPLE = ["alice raymond", "bob ito", "carol mensah", "david lin", "erika voss", "josé ferreira"]
DRUGS = ["aspirin", "metformin", "lisinopril", "atorvastatin", "amoxicillin"]
CONDITIONS = ["headache", "type 2 diabetes", "hypertension", "pneumonia", "high cholesterol"]
ORGS = ["general hospital", "acme clinic", "riverside pharmacy", "county lab"]
TIMES = ["monday", "last tuesday", "march 3", "the second week"]
PLACES = ["ward 4", "the icu", "radiology"]
PROCEDURES = ["chest x-ray", "blood panel", "mri scan"]

# exact predicate and a reworded variant that shares tokens with it, so the
# trigram baseline scores the pair strictly above zero
PREDICATES = [
    ("was treated with", "treated with"),
    ("was prescribed", "was prescribed a course of"),
    ("was diagnosed with", "diagnosed with"),
    ("was admitted on", "admitted to care on"),
    ("was discharged to", "discharged to"),
    ("reported", "reported symptoms of"),
    ("underwent", "underwent a scheduled"),
    ("was transferred to", "transferred to"),
]


def _subject_pool():
    return (
        [(p, "Person") for p in PEOPLE]
        + [(d, "Drug") for d in DRUGS]
        + [(o, "Org") for o in ORGS]
        + [(pr, "Procedure") for pr in PROCEDURES]
    )


def _object_pool():
    return CONDITIONS + DRUGS + TIMES + PLACES + PEOPLE + PROCEDURES


def make_document(rng: random.Random, doc_id: str) -> list[dict]:
    subjects = _subject_pool()
    objects = _object_pool()
    n_facts = rng.randint(5, 9)

    source_facts = []
    used_pairs = set()
    while len(source_facts) < n_facts:
        subject, subject_type = rng.choice(subjects)
        obj = rng.choice(objects)
        if obj == subject:
            continue
        exact, reworded = rng.choice(PREDICATES)
        pair = (subject, obj)
        if pair in used_pairs and rng.random() < 0.7:
            continue  # keep a few duplicate (subject, object) pairs, not many
        used_pairs.add(pair)
        source_facts.append(
            {
                "subject": {"text": subject, "type": subject_type},
                "predicate": exact,
                "object": obj,
                "_reworded": reworded,
            }
        )

    # entities that produced no triple still count toward the type bag
    extra_entities = []
    if rng.random() < 0.5:
        extra_entities.append({"text": rng.choice(PLACES), "type": "Place"})
    if rng.random() < 0.3:
        extra_entities.append({"text": rng.choice(TIMES), "type": "Time"})

    def strip(fact: dict) -> dict:
        return {k: v for k, v in fact.items() if k != "_reworded"}

    records = []
    source: dict = {"doc_id": doc_id, "side": "source"}
    if extra_entities:
        source["entities"] = extra_entities
    source["facts"] = [strip(f) for f in source_facts]
    records.append(source)

    paraphrased = []
    for fact in source_facts:
        out = strip(fact)
        if rng.random() < 0.8:
            out = dict(out, predicate=fact["_reworded"])
        paraphrased.append(out)
    records.append(
        {"doc_id": doc_id, "side": "target", "model": "model-paraphrase", "facts": paraphrased}
    )

    n_dropped = max(1, round(0.35 * len(source_facts)))
    keep_idx = sorted(rng.sample(range(len(source_facts)), len(source_facts) - n_dropped))
    kept = [strip(source_facts[i]) for i in keep_idx]
    records.append(
        {"doc_id": doc_id, "side": "target", "model": "model-omission", "facts": kept}
    )

    fabricated = list(kept)
    for _ in range(rng.randint(2, 3)):
        while True:
            subject, subject_type = rng.choice(subjects)
            obj = rng.choice(objects)
            if obj != subject and (subject, obj) not in used_pairs:
                break
        used_pairs.add((subject, obj))
        exact, _ = rng.choice(PREDICATES)
        fabricated.append(
            {"subject": {"text": subject, "type": subject_type}, "predicate": exact, "object": obj}
        )
    records.append(
        {"doc_id": doc_id, "side": "target", "model": "model-hallucination", "facts": fabricated}
    )
    return records


def main() -> int:
    out_path = Path(__file__).resolve().parent.parent / "data" / "synthetic_corpus.jsonl"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    lines = []
    for i in range(1, NUM_DOCS + 1):
        lines.extend(make_document(rng, f"doc-{i:03d}"))
    with out_path.open("w", encoding="utf-8", newline="\n") as handle:
        for record in lines:
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            handle.write("\n")
    print(f"wrote {len(lines)} records to {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
