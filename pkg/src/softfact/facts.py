"""Core fact types: typed entities, atomic (subject, predicate, object)
triples, and deduplicated per-record fact sets.

All types are immutable after construction and safe to share between
concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


def normalize_text(raw: str) -> str:
    """Case-fold, collapse internal whitespace, and trim.

    Idempotent: ``normalize_text(normalize_text(x)) == normalize_text(x)``.
    Empty input yields an empty string; callers enforce non-emptiness.
    """
    return " ".join(raw.casefold().split())


class Side(str, Enum):
    """Which side of the comparison a fact set belongs to."""

    SOURCE = "source"
    TARGET = "target"


@dataclass(frozen=True)
class TypedEntity:
    """An entity surface form plus the type label assigned by the annotator.

    The surface form is normalized at construction; the type label is kept
    verbatim apart from trimming, so downstream type matching stays exact
    against the annotation source.
    """

    text: str
    entity_type: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "text", normalize_text(self.text))
        object.__setattr__(self, "entity_type", self.entity_type.strip())
        if not self.text:
            raise ValueError("entity text must be non-empty")
        if not self.entity_type:
            raise ValueError("entity type must be non-empty")


@dataclass(frozen=True, eq=False)
class Fact:
    """An atomic (subject, predicate, object) assertion.

    Equality and hashing use only ``(subject.text, predicate, object)``; the
    subject's type label and the optional object type are metadata and never
    participate in matching.
    """

    subject: TypedEntity
    predicate: str
    object: str
    object_type: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "predicate", normalize_text(self.predicate))
        object.__setattr__(self, "object", normalize_text(self.object))
        if not self.predicate:
            raise ValueError("predicate must be non-empty")
        if not self.object:
            raise ValueError("fact object must be non-empty")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject.text, self.predicate, self.object)

    @property
    def so_pair(self) -> tuple[str, str]:
        return (self.subject.text, self.object)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fact):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Fact({self.subject.text!r}, {self.predicate!r}, {self.object!r})"


@dataclass(frozen=True)
class FactSet:
    """Deduplicated facts for one (document, side[, model]) record.

    ``facts`` may be passed as any iterable; duplicates under ``Fact``
    equality are dropped (first occurrence wins) and tallied in
    ``duplicates_dropped``. ``entities`` carries annotator entities that
    produced no triple; they never score but do feed entity-type statistics.
    """

    doc_id: str
    side: Side
    facts: frozenset[Fact] = field(default_factory=frozenset)
    model: str | None = None
    entities: tuple[TypedEntity, ...] = ()
    duplicates_dropped: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "doc_id", self.doc_id.strip())
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "entities", tuple(self.entities))
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        given = list(self.facts)
        unique: dict[Fact, None] = dict.fromkeys(given)
        object.__setattr__(self, "facts", frozenset(unique))
        object.__setattr__(
            self, "duplicates_dropped", self.duplicates_dropped + len(given) - len(unique)
        )
        if self.side is Side.TARGET and not self.model:
            raise ValueError("target record missing model")

    def sorted_facts(self) -> tuple[Fact, ...]:
        """Facts in canonical (subject, predicate, object) order."""
        return tuple(sorted(self.facts, key=lambda f: f.key))


def so_pairs(fs: FactSet) -> frozenset[tuple[str, str]]:
    """Unique (subject text, object) projections over a fact set."""
    return frozenset(f.so_pair for f in fs.facts)


@dataclass(frozen=True)
class Counts:
    """Weighted true positives plus hard false-positive/negative tallies.

    ``tp`` accumulates similarity weights and may be negative when a provider
    returns negative scores; precision and recall clamp it at zero.
    """

    tp: float
    fp: int
    fn: int
