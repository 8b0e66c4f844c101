"""TF-IDF weighting over entity types and top-n type selection.

Each document contributes a bag of entity-type labels (one occurrence per
annotated entity, not per distinct entity). Term frequency is the
within-document relative frequency, inverse document frequency is the
unsmoothed ln(N / df), and a type's aggregate weight is the mean of its
per-document weights over the documents where it occurs. With raw idf, a
type present in every document therefore aggregates to exactly zero.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .corpus import Corpus


@dataclass(frozen=True)
class TypeWeights:
    """Per-document and aggregate TF-IDF weights for every observed type.

    ``doc_freq`` (documents containing the type) and ``corpus_freq`` (total
    occurrences) are retained for reporting and for degenerate-idf fallback.
    """

    per_doc: Mapping[tuple[str, str], float]
    aggregate: Mapping[str, float]
    doc_freq: Mapping[str, int]
    corpus_freq: Mapping[str, int]


@dataclass(frozen=True)
class TypeSet:
    """The ordered selection of entity types that gate scoring."""

    types: tuple[str, ...]
    n: int

    def __contains__(self, type_label: str) -> bool:
        return type_label in self.types


def tfidf_weights(corpus: Corpus) -> TypeWeights:
    """Compute TF-IDF weights for every entity type in the corpus.

    Documents with an empty type bag contribute no per-document entries but
    still count toward N. All weights are non-negative.
    """
    n_docs = len(corpus.documents)
    doc_freq: Counter = Counter()
    corpus_freq: Counter = Counter()
    for doc in corpus.documents:
        doc_freq.update(doc.type_bag.keys())
        corpus_freq.update(doc.type_bag)

    per_doc: dict[tuple[str, str], float] = {}
    totals: dict[str, float] = {t: 0.0 for t in doc_freq}
    for doc in sorted(corpus.documents, key=lambda d: d.doc_id):
        bag_size = sum(doc.type_bag.values())
        if bag_size == 0:
            continue
        for type_label in sorted(doc.type_bag):
            tf = doc.type_bag[type_label] / bag_size
            idf = math.log(n_docs / doc_freq[type_label])
            weight = tf * idf
            per_doc[(doc.doc_id, type_label)] = weight
            totals[type_label] += weight

    aggregate = {t: totals[t] / doc_freq[t] for t in sorted(doc_freq)}
    return TypeWeights(
        per_doc=per_doc,
        aggregate=aggregate,
        doc_freq=dict(doc_freq),
        corpus_freq=dict(corpus_freq),
    )


def select_top_types(weights: TypeWeights, n: int) -> TypeSet:
    """Pick the top-n types by aggregate weight.

    Ordering is (aggregate weight descending, label ascending). When n covers
    every distinct type, all types are returned, positively weighted ones
    first. Otherwise zero-weight types are excluded from the cut. If every
    aggregate weight is zero (degenerate idf, e.g. a single-document corpus)
    the ranking falls back to corpus-wide frequency.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ranked = sorted(weights.aggregate, key=lambda t: (-weights.aggregate[t], t))
    if not ranked:
        return TypeSet(types=(), n=n)
    if all(weights.aggregate[t] == 0.0 for t in ranked):
        by_freq = sorted(ranked, key=lambda t: (-weights.corpus_freq[t], t))
        return TypeSet(types=tuple(by_freq[:n]), n=n)
    if n >= len(ranked):
        return TypeSet(types=tuple(ranked), n=n)
    cut = [t for t in ranked[:n] if weights.aggregate[t] > 0.0]
    return TypeSet(types=tuple(cut), n=n)
