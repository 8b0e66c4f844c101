"""Soft-weighted overlap scoring between source and target fact sets.

A source fact whose (subject, object) pair is absent from the target's pair
set is a miss (fn); a target fact whose pair is absent from the source's pair
set is a fabrication (fp). Facts whose pairs line up contribute predicate
similarity to the weighted true-positive total: in ``literal`` mode every
pair-matching target fact adds one similarity term, in ``best_match`` mode
only the best-scoring one does. Contributions are accumulated in canonical
fact order, so results never depend on input iteration order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .corpus import Corpus, DocumentRecord
from .errors import ValidationError
from .facts import Counts, Fact, FactSet, so_pairs
from .similarity import SimilarityProvider
from .weighting import TypeSet


class Mode(str, Enum):
    """How multiple target facts sharing one (subject, object) pair count."""

    LITERAL = "literal"
    BEST_MATCH = "best_match"


@dataclass(frozen=True)
class MatchedPair:
    source_fact: Fact
    target_fact: Fact
    similarity: float


@dataclass(frozen=True)
class MatchResult:
    counts: Counts
    matched: tuple[MatchedPair, ...]
    fn_facts: tuple[Fact, ...]
    fp_facts: tuple[Fact, ...]


@dataclass(frozen=True)
class ScoreReport:
    """Per-(document, model) consistency report.

    ``fp_facts`` enumerates fabricated target facts, ``fn_facts`` the source
    facts the target ignored; ``matched`` records every scored predicate
    pairing. ``vacuous`` marks the empty-versus-empty comparison, which
    carries no inconsistency evidence and reports f1 = 1.
    """

    doc_id: str
    model: str
    counts: Counts
    precision: float
    recall: float
    f1: float
    matched: tuple[MatchedPair, ...] = ()
    fn_facts: tuple[Fact, ...] = ()
    fp_facts: tuple[Fact, ...] = ()
    vacuous: bool = False


def filter_facts(fs: FactSet, type_set: TypeSet) -> FactSet:
    """Retain only facts whose subject entity type is in the selection.

    Applied to source and target alike so out-of-scope target facts cannot
    inflate the fabrication count.
    """
    if not type_set.types:
        raise ValueError("type selection must be non-empty")
    selected = set(type_set.types)
    kept = [f for f in fs.sorted_facts() if f.subject.entity_type in selected]
    return FactSet(
        doc_id=fs.doc_id, side=fs.side, facts=kept, model=fs.model, entities=fs.entities
    )


def match_facts(
    source: FactSet,
    target: FactSet,
    provider: SimilarityProvider,
    mode: Mode = Mode.LITERAL,
) -> MatchResult:
    """Run the weighted counting algorithm and keep the supporting evidence."""
    mode = Mode(mode)
    src = source.sorted_facts()
    tgt = target.sorted_facts()
    so_s = so_pairs(source)
    so_t = so_pairs(target)

    fn_facts = tuple(f for f in src if f.so_pair not in so_t)
    fp_facts = tuple(f for f in tgt if f.so_pair not in so_s)

    groups: list[tuple[Fact, list[Fact]]] = []
    for f_s in src:
        if f_s.so_pair in so_t:
            candidates = [f_t for f_t in tgt if f_t.so_pair == f_s.so_pair]
            groups.append((f_s, candidates))

    pairs = [
        (f_s.predicate, f_t.predicate) for f_s, candidates in groups for f_t in candidates
    ]
    scores = provider.score_many(pairs) if pairs else []

    tp = 0.0
    matched: list[MatchedPair] = []
    cursor = 0
    for f_s, candidates in groups:
        group_scores = scores[cursor : cursor + len(candidates)]
        cursor += len(candidates)
        if mode is Mode.LITERAL:
            for f_t, sim in zip(candidates, group_scores):
                tp += sim
                matched.append(MatchedPair(f_s, f_t, sim))
        else:
            best = max(range(len(candidates)), key=lambda i: group_scores[i])
            tp += group_scores[best]
            matched.append(MatchedPair(f_s, candidates[best], group_scores[best]))

    counts = Counts(tp=tp, fp=len(fp_facts), fn=len(fn_facts))
    return MatchResult(
        counts=counts, matched=tuple(matched), fn_facts=fn_facts, fp_facts=fp_facts
    )


def weighted_counts(
    source: FactSet,
    target: FactSet,
    provider: SimilarityProvider,
    mode: Mode = Mode.LITERAL,
) -> Counts:
    """The weighted tp plus fp/fn tallies, without the evidence lists."""
    return match_facts(source, target, provider, mode).counts


def derive_rates(counts: Counts) -> tuple[float, float, float]:
    """Precision, recall, and F1 from counts, each clamped into [0, 1].

    The weighted tp is floored at zero first; a zero denominator yields zero.
    """
    tp = max(counts.tp, 0.0)
    precision = tp / (tp + counts.fp) if tp + counts.fp > 0 else 0.0
    recall = tp / (tp + counts.fn) if tp + counts.fn > 0 else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def score_document(
    doc: DocumentRecord,
    model: str,
    type_set: TypeSet,
    provider: SimilarityProvider,
    mode: Mode = Mode.LITERAL,
) -> ScoreReport:
    """Score one model's target against the document's source."""
    if model not in doc.targets:
        raise ValidationError(f"doc '{doc.doc_id}': unknown model '{model}'")
    source = filter_facts(doc.source, type_set)
    target = filter_facts(doc.targets[model], type_set)
    if not source.facts and not target.facts:
        return ScoreReport(
            doc_id=doc.doc_id,
            model=model,
            counts=Counts(tp=0.0, fp=0, fn=0),
            precision=0.0,
            recall=0.0,
            f1=1.0,
            vacuous=True,
        )
    result = match_facts(source, target, provider, mode)
    precision, recall, f1 = derive_rates(result.counts)
    return ScoreReport(
        doc_id=doc.doc_id,
        model=model,
        counts=result.counts,
        precision=precision,
        recall=recall,
        f1=f1,
        matched=result.matched,
        fn_facts=result.fn_facts,
        fp_facts=result.fp_facts,
    )


def score_corpus(
    corpus: Corpus,
    type_set: TypeSet,
    provider: SimilarityProvider,
    mode: Mode = Mode.LITERAL,
    jobs: int = 1,
) -> list[ScoreReport]:
    """Score every (document, model) pair in canonical order.

    Tasks are independent, so any worker count produces identical results.
    """
    tasks = [
        (doc, model) for doc in corpus.documents for model in sorted(doc.targets)
    ]
    if jobs <= 1:
        return [score_document(doc, model, type_set, provider, mode) for doc, model in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(
            pool.map(lambda task: score_document(task[0], task[1], type_set, provider, mode), tasks)
        )
