from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from softfact import Fact, FactSet, Side, TypedEntity, normalize_text, so_pairs

from .conftest import mk_fact, mk_factset


def test_normalize_examples():
    assert normalize_text("  Aspirin  TABLET ") == "aspirin tablet"
    assert normalize_text("monday") == "monday"
    assert normalize_text("Beth  Israel\tDeaconess") == "beth israel deaconess"
    assert normalize_text("") == ""


@given(st.text())
def test_normalize_idempotent(raw):
    once = normalize_text(raw)
    assert normalize_text(once) == once


def test_entity_normalizes_text_but_not_type():
    entity = TypedEntity("  José  PÉREZ ", " Person ")
    assert entity.text == "josé pérez"
    assert entity.entity_type == "Person"


def test_entity_rejects_empty_fields():
    with pytest.raises(ValueError):
        TypedEntity("   ", "Person")
    with pytest.raises(ValueError):
        TypedEntity("alice", "  ")


def test_fact_normalizes_predicate_and_object():
    fact = mk_fact("Alice", "  Works   AT ", "ACME  Corp")
    assert fact.predicate == "works at"
    assert fact.object == "acme corp"


def test_fact_rejects_empty_components():
    with pytest.raises(ValueError):
        mk_fact("alice", "   ", "acme")
    with pytest.raises(ValueError):
        mk_fact("alice", "works at", " ")


def test_fact_equality_ignores_type_metadata():
    a = Fact(TypedEntity("aspirin", "Drug"), "treats", "headache")
    b = Fact(TypedEntity("Aspirin", "Medication"), "Treats", "Headache", object_type="Condition")
    assert a == b
    assert hash(a) == hash(b)
    c = Fact(TypedEntity("aspirin", "Drug"), "cures", "headache")
    assert a != c


def test_factset_deduplicates_and_counts():
    f = mk_fact("aspirin", "treats", "headache", "Drug")
    fs = mk_factset(Side.SOURCE, [f, f, mk_fact("Aspirin", "TREATS", "headache", "Med")])
    assert len(fs.facts) == 1
    assert fs.duplicates_dropped == 2


def test_factset_insert_same_triple_twice_size_unchanged():
    f = mk_fact("a", "p", "b")
    one = mk_factset(Side.SOURCE, [f])
    two = mk_factset(Side.SOURCE, [f, f])
    assert len(one.facts) == len(two.facts) == 1


def test_target_requires_model():
    with pytest.raises(ValueError, match="target record missing model"):
        FactSet(doc_id="d1", side=Side.TARGET, facts=[mk_fact("a", "p", "b")])


def test_factset_rejects_empty_doc_id():
    with pytest.raises(ValueError):
        FactSet(doc_id="  ", side=Side.SOURCE, facts=[])


def test_so_pairs_examples():
    assert so_pairs(mk_factset(Side.SOURCE, [])) == frozenset()
    dedup = mk_factset(Side.SOURCE, [mk_fact("a", "p", "b"), mk_fact("a", "q", "b")])
    assert so_pairs(dedup) == {("a", "b")}
    distinct = mk_factset(Side.SOURCE, [mk_fact("a", "p", "b"), mk_fact("c", "p", "d")])
    assert so_pairs(distinct) == {("a", "b"), ("c", "d")}


def test_so_pairs_monotone_under_subsets():
    rng = random.Random(7)
    for _ in range(50):
        facts = [
            mk_fact(f"s{rng.randrange(4)}", f"p{rng.randrange(4)}", f"o{rng.randrange(4)}")
            for _ in range(rng.randint(0, 8))
        ]
        subset = [f for f in facts if rng.random() < 0.5]
        small = so_pairs(mk_factset(Side.SOURCE, subset))
        big = so_pairs(mk_factset(Side.SOURCE, facts))
        assert small <= big


def test_sorted_facts_is_canonical():
    facts = [mk_fact("b", "q", "y"), mk_fact("a", "p", "x"), mk_fact("b", "p", "x")]
    fs = mk_factset(Side.SOURCE, facts)
    keys = [f.key for f in fs.sorted_facts()]
    assert keys == sorted(keys)
