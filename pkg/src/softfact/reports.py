"""Report serialization: JSON documents for single reports and comparison
results, and line-delimited streams of per-document reports.

Serialization is deterministic (sorted keys, shortest round-trip float
repr) and lossless: write followed by read reconstructs a structurally
equal report.
"""

from __future__ import annotations

import json
from typing import IO, Iterable

from .corpus import fact_from_obj, fact_to_obj
from .errors import ValidationError
from .facts import Counts
from .scoring import MatchedPair, ScoreReport
from .stats import ComparisonResult, ScoreMatrix


def score_report_to_obj(report: ScoreReport) -> dict:
    return {
        "doc_id": report.doc_id,
        "model": report.model,
        "tp": report.counts.tp,
        "fp": report.counts.fp,
        "fn": report.counts.fn,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "vacuous": report.vacuous,
        "matched": [
            {
                "source_fact": fact_to_obj(m.source_fact),
                "target_fact": fact_to_obj(m.target_fact),
                "similarity": m.similarity,
            }
            for m in report.matched
        ],
        "fn_facts": [fact_to_obj(f) for f in report.fn_facts],
        "fp_facts": [fact_to_obj(f) for f in report.fp_facts],
    }


def score_report_from_obj(obj: dict) -> ScoreReport:
    try:
        return ScoreReport(
            doc_id=obj["doc_id"],
            model=obj["model"],
            counts=Counts(tp=float(obj["tp"]), fp=int(obj["fp"]), fn=int(obj["fn"])),
            precision=float(obj["precision"]),
            recall=float(obj["recall"]),
            f1=float(obj["f1"]),
            vacuous=bool(obj.get("vacuous", False)),
            matched=tuple(
                MatchedPair(
                    source_fact=fact_from_obj(m["source_fact"]),
                    target_fact=fact_from_obj(m["target_fact"]),
                    similarity=float(m["similarity"]),
                )
                for m in obj.get("matched", [])
            ),
            fn_facts=tuple(fact_from_obj(f) for f in obj.get("fn_facts", [])),
            fp_facts=tuple(fact_from_obj(f) for f in obj.get("fp_facts", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed score report: {exc}") from exc


def comparison_to_obj(result: ComparisonResult, alpha: float | None = None) -> dict:
    """Serialize a comparison; an alpha only annotates significance flags and
    never alters the p-values."""
    obj = {
        "models": list(result.matrix.models),
        "doc_ids": list(result.matrix.doc_ids),
        "score_matrix": [list(row) for row in result.matrix.rows],
        "friedman": {
            "statistic": result.friedman_statistic,
            "p_value": result.p_value,
        },
        "posthoc": [list(row) for row in result.posthoc],
        "top_rank": dict(result.top_rank),
    }
    if alpha is not None:
        obj["alpha"] = alpha
        obj["significant"] = [
            [i != j and p < alpha for j, p in enumerate(row)]
            for i, row in enumerate(result.posthoc)
        ]
    return obj


def comparison_from_obj(obj: dict) -> ComparisonResult:
    try:
        matrix = ScoreMatrix(
            doc_ids=tuple(obj["doc_ids"]),
            models=tuple(obj["models"]),
            rows=tuple(tuple(float(x) for x in row) for row in obj["score_matrix"]),
        )
        return ComparisonResult(
            matrix=matrix,
            friedman_statistic=float(obj["friedman"]["statistic"]),
            p_value=float(obj["friedman"]["p_value"]),
            posthoc=tuple(tuple(float(x) for x in row) for row in obj["posthoc"]),
            top_rank={model: float(v) for model, v in obj["top_rank"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed comparison result: {exc}") from exc


def _dump(obj: dict, stream: IO, pretty: bool = True) -> None:
    if pretty:
        json.dump(obj, stream, ensure_ascii=False, sort_keys=True, indent=2)
    else:
        json.dump(obj, stream, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    stream.write("\n")


def write_report(report: ScoreReport | ComparisonResult, stream: IO) -> None:
    """Write one report as a single pretty-printed JSON document."""
    if isinstance(report, ScoreReport):
        _dump(score_report_to_obj(report), stream)
    elif isinstance(report, ComparisonResult):
        _dump(comparison_to_obj(report), stream)
    else:
        raise TypeError(f"cannot serialize {type(report).__name__}")


def read_report(stream: IO) -> ScoreReport | ComparisonResult:
    """Read back a report written by write_report, detecting its kind."""
    try:
        obj = json.load(stream)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid report JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValidationError("report must be a JSON object")
    if "posthoc" in obj:
        return comparison_from_obj(obj)
    return score_report_from_obj(obj)


def write_score_reports(reports: Iterable[ScoreReport], stream: IO) -> None:
    """Write a stream of per-document reports, one compact JSON per line."""
    for report in reports:
        _dump(score_report_to_obj(report), stream, pretty=False)


def read_score_reports(stream: IO) -> list[ScoreReport]:
    """Read a line-delimited stream of per-document reports."""
    reports = []
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"line {lineno}: invalid JSON: {exc}") from exc
        reports.append(score_report_from_obj(obj))
    return reports
