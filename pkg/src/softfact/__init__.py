"""Schema-free factual-consistency scoring over annotated fact sets.

Texts are decomposed upstream into atomic (subject, predicate, object)
facts; this package matches source and target fact sets with exact
(subject, object) pairing and soft predicate similarity, gates facts by
TF-IDF-ranked entity types, and compares models across a corpus with
rank-based statistics.
"""

from .corpus import (
    Corpus,
    DocumentRecord,
    assemble_corpus,
    parse_fact_file,
    write_fact_file,
)
from .errors import ProviderError, ValidationError
from .facts import Counts, Fact, FactSet, Side, TypedEntity, normalize_text, so_pairs
from .reports import read_report, read_score_reports, write_report, write_score_reports
from .scoring import (
    MatchedPair,
    Mode,
    ScoreReport,
    filter_facts,
    match_facts,
    score_corpus,
    score_document,
    weighted_counts,
)
from .similarity import (
    ExternalProvider,
    SimilarityProvider,
    TrigramProvider,
    greedy_match_score,
    trigram_embed,
)
from .stats import (
    ComparisonResult,
    ScoreMatrix,
    compare_models,
    friedman,
    posthoc,
    rank_rows,
    top_rank_tally,
)
from .weighting import TypeSet, TypeWeights, select_top_types, tfidf_weights

__version__ = "0.1.0"

__all__ = [
    "ComparisonResult",
    "Corpus",
    "Counts",
    "DocumentRecord",
    "ExternalProvider",
    "Fact",
    "FactSet",
    "MatchedPair",
    "Mode",
    "ProviderError",
    "ScoreMatrix",
    "ScoreReport",
    "Side",
    "SimilarityProvider",
    "TrigramProvider",
    "TypeSet",
    "TypeWeights",
    "TypedEntity",
    "ValidationError",
    "assemble_corpus",
    "compare_models",
    "filter_facts",
    "friedman",
    "greedy_match_score",
    "match_facts",
    "normalize_text",
    "parse_fact_file",
    "posthoc",
    "rank_rows",
    "read_report",
    "read_score_reports",
    "score_corpus",
    "score_document",
    "select_top_types",
    "so_pairs",
    "tfidf_weights",
    "top_rank_tally",
    "trigram_embed",
    "weighted_counts",
    "write_fact_file",
    "write_report",
    "write_score_reports",
]
