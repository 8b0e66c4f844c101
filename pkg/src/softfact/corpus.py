"""Fact-file parsing and corpus assembly.

The fact file format is line-delimited JSON (UTF-8), one record per
(document, side[, model]):

    {"doc_id": str, "side": "source"|"target", "model": str?,
     "entities": [{"text": str, "type": str}]?,
     "facts": [{"subject": {"text": str, "type": str},
                "predicate": str, "object": str, "object_type": str?}]}

The optional "entities" array lists annotator entities that produced no
triple; their types count toward the document's type bag alongside the
subject type of every fact.
"""

from __future__ import annotations

import io
import json
import logging
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from .errors import ValidationError
from .facts import Fact, FactSet, Side, TypedEntity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DocumentRecord:
    """One document: its source fact set, per-model target fact sets, and the
    multiset of entity-type labels observed in the source annotation."""

    doc_id: str
    source: FactSet
    targets: Mapping[str, FactSet]
    type_bag: Counter

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", dict(self.targets))
        object.__setattr__(self, "type_bag", Counter(self.type_bag))


@dataclass(frozen=True)
class Corpus:
    """All documents under comparison, with the sorted union of target model
    names. Every document has exactly one source and at least one target."""

    documents: tuple[DocumentRecord, ...]
    model_names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "documents", tuple(self.documents))
        object.__setattr__(self, "model_names", tuple(self.model_names))


def _require(obj: dict, field_name: str, kind: type, where: str):
    if field_name not in obj:
        raise ValidationError(f"{where}: missing required field '{field_name}'")
    value = obj[field_name]
    if not isinstance(value, kind):
        raise ValidationError(
            f"{where}: field '{field_name}' must be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def entity_from_obj(obj: dict, where: str = "entity") -> TypedEntity:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: entity must be an object")
    text = _require(obj, "text", str, where)
    etype = _require(obj, "type", str, where)
    try:
        return TypedEntity(text=text, entity_type=etype)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def fact_from_obj(obj: dict, where: str = "fact") -> Fact:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: fact must be an object")
    subject_obj = _require(obj, "subject", dict, where)
    predicate = _require(obj, "predicate", str, where)
    object_text = _require(obj, "object", str, where)
    object_type = obj.get("object_type")
    if object_type is not None and not isinstance(object_type, str):
        raise ValidationError(f"{where}: field 'object_type' must be str")
    subject = entity_from_obj(subject_obj, where=f"{where}: subject")
    try:
        return Fact(subject=subject, predicate=predicate, object=object_text, object_type=object_type)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def fact_to_obj(fact: Fact) -> dict:
    obj = {
        "subject": {"text": fact.subject.text, "type": fact.subject.entity_type},
        "predicate": fact.predicate,
        "object": fact.object,
    }
    if fact.object_type is not None:
        obj["object_type"] = fact.object_type
    return obj


def factset_to_obj(fs: FactSet) -> dict:
    obj: dict = {"doc_id": fs.doc_id, "side": fs.side.value}
    if fs.model is not None:
        obj["model"] = fs.model
    if fs.entities:
        obj["entities"] = [{"text": e.text, "type": e.entity_type} for e in fs.entities]
    obj["facts"] = [fact_to_obj(f) for f in fs.sorted_facts()]
    return obj


def _factset_from_obj(obj: dict, where: str) -> FactSet:
    doc_id = _require(obj, "doc_id", str, where)
    side_raw = _require(obj, "side", str, where)
    if side_raw not in (Side.SOURCE.value, Side.TARGET.value):
        raise ValidationError(f"{where}: field 'side' must be 'source' or 'target'")
    model = obj.get("model")
    if model is not None and not isinstance(model, str):
        raise ValidationError(f"{where}: field 'model' must be str")
    entities_raw = obj.get("entities", [])
    if not isinstance(entities_raw, list):
        raise ValidationError(f"{where}: field 'entities' must be a list")
    facts_raw = _require(obj, "facts", list, where)

    entities = tuple(
        entity_from_obj(e, where=f"{where}: entity {i + 1}") for i, e in enumerate(entities_raw)
    )
    facts = [fact_from_obj(f, where=f"{where}: fact {i + 1}") for i, f in enumerate(facts_raw)]
    try:
        fs = FactSet(doc_id=doc_id, side=Side(side_raw), facts=facts, model=model, entities=entities)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    if fs.duplicates_dropped:
        logger.warning(
            "%s: dropped %d duplicate fact(s) for doc '%s'", where, fs.duplicates_dropped, fs.doc_id
        )
    return fs


def parse_fact_file(stream: IO, source_name: str = "<stream>") -> list[FactSet]:
    """Parse a line-delimited fact file into validated fact sets.

    Accepts a text or binary stream; binary input is decoded as UTF-8. Blank
    lines are skipped. Errors report the offending line number and field.
    """
    if isinstance(stream, (io.RawIOBase, io.BufferedIOBase)) or (
        hasattr(stream, "mode") and "b" in getattr(stream, "mode", "")
    ):
        stream = io.TextIOWrapper(stream, encoding="utf-8")
    fact_sets = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        where = f"{source_name}: line {lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{where}: invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise ValidationError(f"{where}: record must be a JSON object")
        fact_sets.append(_factset_from_obj(obj, where))
    return fact_sets


def write_fact_file(fact_sets: Iterable[FactSet], stream: IO) -> None:
    """Serialize fact sets as line-delimited JSON; inverse of parse_fact_file
    up to fact ordering and duplicate removal."""
    for fs in fact_sets:
        stream.write(json.dumps(factset_to_obj(fs), ensure_ascii=False, sort_keys=True))
        stream.write("\n")


def assemble_corpus(fact_sets: Iterable[FactSet]) -> Corpus:
    """Group fact sets by document and validate corpus shape.

    Each document needs exactly one source record and at least one target;
    two targets for the same (document, model) pair are rejected. The result
    is independent of input order: documents are sorted by doc_id and model
    names are the sorted union over all targets.
    """
    fact_sets = list(fact_sets)
    if not fact_sets:
        raise ValidationError("no fact sets given")

    sources: dict[str, FactSet] = {}
    targets: dict[str, dict[str, FactSet]] = {}
    for fs in fact_sets:
        if fs.side is Side.SOURCE:
            if fs.doc_id in sources:
                raise ValidationError(f"doc '{fs.doc_id}': multiple source records")
            sources[fs.doc_id] = fs
        else:
            per_doc = targets.setdefault(fs.doc_id, {})
            assert fs.model is not None  # enforced at FactSet construction
            if fs.model in per_doc:
                raise ValidationError(
                    f"doc '{fs.doc_id}': duplicate target records for model '{fs.model}'"
                )
            per_doc[fs.model] = fs

    for doc_id in sorted(targets.keys() - sources.keys()):
        raise ValidationError(f"doc '{doc_id}': missing source record")
    for doc_id in sorted(sources.keys() - targets.keys()):
        raise ValidationError(f"doc '{doc_id}': no target records")

    documents = []
    for doc_id in sorted(sources):
        source = sources[doc_id]
        type_bag = Counter(f.subject.entity_type for f in source.facts)
        type_bag.update(e.entity_type for e in source.entities)
        documents.append(
            DocumentRecord(
                doc_id=doc_id,
                source=source,
                targets=targets[doc_id],
                type_bag=type_bag,
            )
        )
    model_names = sorted({model for per_doc in targets.values() for model in per_doc})
    return Corpus(documents=tuple(documents), model_names=tuple(model_names))
