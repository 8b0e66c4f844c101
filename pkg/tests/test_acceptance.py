"""Acceptance suite: one test per release criterion, each printing a PASS
line on success (run with ``pytest tests/test_acceptance.py -v -s``).
"""

from __future__ import annotations

import json
import math
import random
import statistics
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

from softfact import (
    Corpus,
    DocumentRecord,
    ExternalProvider,
    ScoreMatrix,
    Side,
    TrigramProvider,
    friedman,
    posthoc,
    score_document,
    select_top_types,
    tfidf_weights,
    weighted_counts,
)
from softfact.cli import main as cli_main
from softfact.scoring import Mode
from softfact.weighting import TypeSet

from .conftest import (
    TYPE_POOL,
    ConstantProvider,
    make_document,
    mk_fact,
    mk_factset,
    random_factset,
)
from .oracles import reference_weighted_counts

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_PATH = REPO_ROOT / "data" / "synthetic_corpus.jsonl"
GOLDEN_PATH = REPO_ROOT / "data" / "golden_run.json"

ALL_TYPES = TypeSet(types=TYPE_POOL, n=len(TYPE_POOL))


def _pass(name: str) -> None:
    print(f"PASS  {name}")


def _random_matrix(rng, n=None, k=None, tie_prone=False) -> ScoreMatrix:
    n = n or rng.randint(2, 8)
    k = k or rng.randint(3, 5)
    if tie_prone:
        values = [0.0, 0.25, 0.5, 0.75, 1.0]
        rows = [tuple(rng.choice(values) for _ in range(k)) for _ in range(n)]
    else:
        rows = [tuple(rng.random() for _ in range(k)) for _ in range(n)]
    return ScoreMatrix(
        doc_ids=tuple(f"d{i}" for i in range(n)),
        models=tuple(f"m{j}" for j in range(k)),
        rows=tuple(rows),
    )


def test_criterion_scoring_oracle_equivalence():
    """1,000 random fact-set pairs: literal counts equal the nested-loop
    reference exactly, in under 10 seconds."""
    rng = random.Random(1001)
    provider = TrigramProvider()
    started = time.monotonic()
    for _ in range(1000):
        source = random_factset(rng, Side.SOURCE, max_facts=6, alphabet=5)
        target = random_factset(rng, Side.TARGET, max_facts=6, alphabet=5)
        counts = weighted_counts(source, target, provider, Mode.LITERAL)
        ref_tp, ref_fp, ref_fn = reference_weighted_counts(
            source.sorted_facts(), target.sorted_facts(), provider.score
        )
        assert counts.tp == ref_tp, (source, target)
        assert counts.fp == ref_fp
        assert counts.fn == ref_fn
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"oracle equivalence took {elapsed:.1f}s"
    _pass(f"scoring oracle equivalence (1000 pairs, {elapsed:.2f}s)")


def test_criterion_metric_bounds():
    """10,000 random inputs, half scored by a hostile provider returning -1
    everywhere: precision/recall/F1 stay in [0, 1] and report invariants hold."""
    rng = random.Random(2002)
    providers = [TrigramProvider(), ConstantProvider(-1.0, identity_one=False)]
    for i in range(10_000):
        provider = providers[i % 2]
        doc = make_document(
            list(random_factset(rng, Side.SOURCE, max_facts=4).facts),
            {"m": list(random_factset(rng, Side.TARGET, max_facts=4).facts)},
        )
        report = score_document(doc, "m", ALL_TYPES, provider, Mode.LITERAL)
        counts = report.counts
        assert 0.0 <= report.precision <= 1.0
        assert 0.0 <= report.recall <= 1.0
        assert 0.0 <= report.f1 <= 1.0
        assert len(report.fn_facts) == counts.fn
        assert len(report.fp_facts) == counts.fp
        tp = max(counts.tp, 0.0)
        expected_p = tp / (tp + counts.fp) if tp + counts.fp > 0 else 0.0
        expected_r = tp / (tp + counts.fn) if tp + counts.fn > 0 else 0.0
        assert report.precision == expected_p
        assert report.recall == expected_r
        if report.vacuous:
            assert report.f1 == 1.0
            assert (counts.tp, counts.fp, counts.fn) == (0.0, 0, 0)
        else:
            total = expected_p + expected_r
            expected_f1 = 2.0 * expected_p * expected_r / total if total > 0 else 0.0
            assert report.f1 == expected_f1
    _pass("metric bounds under adversarial provider (10000 inputs)")


def test_criterion_identity_and_disjoint():
    """Identical filtered sets give F1 = 1.0 exactly; pair-disjoint sets give
    F1 = 0.0 exactly."""
    rng = random.Random(3003)
    for _ in range(100):
        facts = list(random_factset(rng, Side.SOURCE, max_facts=6).facts)
        if not facts:
            continue
        doc = make_document(facts, {"m": facts})
        assert score_document(doc, "m", ALL_TYPES, TrigramProvider()).f1 == 1.0

    for _ in range(100):
        src = [
            mk_fact(f"left{rng.randrange(4)}", "treats", f"x{rng.randrange(4)}")
            for _ in range(rng.randint(1, 6))
        ]
        tgt = [
            mk_fact(f"right{rng.randrange(4)}", "treats", f"y{rng.randrange(4)}")
            for _ in range(rng.randint(1, 6))
        ]
        doc = make_document(src, {"m": tgt})
        assert score_document(doc, "m", ALL_TYPES, TrigramProvider()).f1 == 0.0
    _pass("identity F1 = 1.0 and disjoint F1 = 0.0, both exact")


def test_criterion_friedman_oracle():
    """The 3x3 perfect-agreement matrix scores exactly 6.0 with p = e^-3, and
    the statistic is bit-invariant under per-row monotone transforms."""
    matrix = ScoreMatrix(
        doc_ids=("a", "b", "c"),
        models=("m1", "m2", "m3"),
        rows=((0.9, 0.5, 0.1),) * 3,
    )
    statistic, p_value = friedman(matrix)
    assert statistic == 6.0
    assert abs(p_value - math.exp(-3.0)) < 1e-9

    rng = random.Random(4004)
    for _ in range(100):
        m = _random_matrix(rng, tie_prone=rng.random() < 0.3)
        transformed = ScoreMatrix(
            doc_ids=m.doc_ids,
            models=m.models,
            rows=tuple(tuple(x**3 for x in row) for row in m.rows),
        )
        assert friedman(transformed) == friedman(m)
    _pass("Friedman oracle: statistic 6.0 exact, p = e^-3 (1e-9), rank invariance")


def test_criterion_posthoc_shape():
    """100 random matrices: pairwise table symmetric, unit diagonal, p in
    [0, 1]; identical model columns give p = 1.0."""
    rng = random.Random(5005)
    for _ in range(100):
        m = _random_matrix(rng, tie_prone=rng.random() < 0.5)
        table = posthoc(m)
        k = m.n_models
        for i in range(k):
            assert table[i][i] == 1.0
            for j in range(k):
                assert table[i][j] == table[j][i]
                assert 0.0 <= table[i][j] <= 1.0

    twin = ScoreMatrix(
        doc_ids=("a", "b", "c"),
        models=("m1", "m2", "m3"),
        rows=((0.9, 0.9, 0.1), (0.4, 0.4, 0.6), (0.7, 0.7, 0.2)),
    )
    assert posthoc(twin)[0][1] == 1.0
    _pass("posthoc matrix shape on 100 random matrices")


def test_criterion_tfidf():
    """The two-document worked example and the everywhere-type degeneracy."""

    def doc(doc_id, bag):
        source = mk_factset(Side.SOURCE, [], doc_id=doc_id)
        target = mk_factset(Side.TARGET, [], doc_id=doc_id, model="m")
        return DocumentRecord(
            doc_id=doc_id, source=source, targets={"m": target}, type_bag=Counter(bag)
        )

    corpus = Corpus(
        documents=(
            doc("d1", ["Person", "Person", "Time"]),
            doc("d2", ["Person", "Org"]),
        ),
        model_names=("m",),
    )
    weights = tfidf_weights(corpus)
    assert abs(weights.per_doc[("d1", "Time")] - (1.0 / 3.0) * math.log(2.0)) < 1e-12
    assert weights.aggregate["Person"] == 0.0

    wide = Corpus(
        documents=tuple(doc(f"d{i}", ["Everywhere", f"Rare{i}"]) for i in range(6)),
        model_names=("m",),
    )
    assert tfidf_weights(wide).aggregate["Everywhere"] == 0.0
    _pass("TF-IDF worked example (1e-12) and everywhere-type zero weight")


def test_criterion_end_to_end_determinism():
    """The bundled corpus run is byte-identical across runs and --jobs
    settings, matches the frozen golden output, and recovers the injected
    error ordering."""
    assert CORPUS_PATH.exists(), "bundled synthetic corpus missing"

    def run(*extra):
        proc = subprocess.run(
            [sys.executable, "-m", "softfact.cli", "run", "--input", str(CORPUS_PATH), *extra],
            capture_output=True,
            check=True,
        )
        return proc.stdout

    first = run()
    second = run()
    parallel = run("--jobs", "8")
    assert first == second
    assert first == parallel
    assert first == GOLDEN_PATH.read_bytes(), "output drifted from frozen golden run"

    obj = json.loads(first)
    means: dict[str, list[float]] = {}
    for report in obj["reports"]:
        means.setdefault(report["model"], []).append(report["f1"])
    assert len(means["model-paraphrase"]) >= 20
    paraphrase = statistics.mean(means["model-paraphrase"])
    omission = statistics.mean(means["model-omission"])
    hallucination = statistics.mean(means["model-hallucination"])
    assert paraphrase > omission > hallucination
    _pass(
        "end-to-end determinism and error-ordering "
        f"(paraphrase {paraphrase:.3f} > omission {omission:.3f} > hallucination {hallucination:.3f})"
    )


def test_criterion_external_provider_contract(similarity_stub, tmp_path):
    """A wire-protocol stub passes the identity check, the clamping check,
    and the transport-failure exit-code check."""
    honest = similarity_stub(score_fn=lambda a, b: 1.0 if a == b else 0.5)
    provider = ExternalProvider(honest.url)
    assert provider.score("x", "x") == 1.0

    loud = similarity_stub(score_fn=lambda a, b: 1.2 if a != b else 1.0)
    clamping = ExternalProvider(loud.url)
    assert clamping.score("a", "b") == 1.0
    assert clamping.clamped == 1

    corpus_file = tmp_path / "tiny.jsonl"
    fact = {"subject": {"text": "a", "type": "T"}, "predicate": "p", "object": "b"}
    lines = [
        {"doc_id": "d1", "side": "source", "facts": [fact]},
        {"doc_id": "d1", "side": "target", "model": "m", "facts": [fact]},
    ]
    corpus_file.write_text("\n".join(json.dumps(l) for l in lines) + "\n")
    code = cli_main(
        [
            "score",
            "--input",
            str(corpus_file),
            "--provider",
            "external",
            "--provider-url",
            "http://127.0.0.1:1",
            "--provider-timeout-ms",
            "200",
        ]
    )
    assert code == 2
    _pass("external provider contract: identity, clamping, exit code 2")
