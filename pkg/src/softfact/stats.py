"""Rank-based comparison of k models over N documents.

The omnibus test is the Friedman chi-square with the standard tie
correction; its p-value comes from the chi-square survival function with
k - 1 degrees of freedom. Pairwise follow-up uses the mean-rank
(Nemenyi-style) statistic referred to the studentized range distribution
with k groups and infinite degrees of freedom, matching the usual critical
tables. First-place tallies split credit equally among tied winners.

Both tail functions are computed in-module: the chi-square tail via the
regularized upper incomplete gamma (power series below s + 1, Lentz
continued fraction above, relative tolerance 1e-12), and the studentized
range tail by fixed-panel Gauss-Legendre quadrature of

    P(Q <= q) = k * integral phi(z) * [Phi(z) - Phi(z - q)]^(k-1) dz

with truncation and quadrature error well below the documented 1e-8.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .scoring import ScoreReport

_MAX_ITER = 600

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL_PANELS = 24
_GL_CUTOFF = 9.0  # phi(9) ~ 1e-18: truncation error is negligible

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _gamma_p_series(s: float, x: float, rtol: float = 1e-14) -> float:
    term = 1.0 / s
    total = term
    a = s
    for _ in range(_MAX_ITER):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * rtol:
            break
    return total * math.exp(-x + s * math.log(x) - math.lgamma(s))


def _gamma_q_contfrac(s: float, x: float, rtol: float = 1e-14) -> float:
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < rtol:
            break
    return h * math.exp(-x + s * math.log(x) - math.lgamma(s))


def gamma_q(s: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(s, x) for s > 0, x >= 0."""
    if s <= 0.0 or x < 0.0:
        raise ValueError("gamma_q requires s > 0 and x >= 0")
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        return 1.0 - _gamma_p_series(s, x)
    return _gamma_q_contfrac(s, x)


def chi2_sf(x: float, df: int) -> float:
    """Survival function of the chi-square distribution."""
    return min(1.0, max(0.0, gamma_q(df / 2.0, x / 2.0)))


def _phi(z: float) -> float:
    return math.exp(-0.5 * z * z) * _INV_SQRT_2PI


def _norm_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / _SQRT2)


def studentized_range_sf(q: float, k: int) -> float:
    """Survival function of the studentized range, k groups, infinite dof."""
    if k < 2:
        raise ValueError("studentized range needs k >= 2 groups")
    if q <= 0.0:
        return 1.0
    width = 2.0 * _GL_CUTOFF / _GL_PANELS
    total = 0.0
    for panel in range(_GL_PANELS):
        mid = -_GL_CUTOFF + (panel + 0.5) * width
        half = 0.5 * width
        for node, weight in zip(_GL_NODES.tolist(), _GL_WEIGHTS.tolist()):
            z = mid + half * node
            inner = _norm_cdf(z) - _norm_cdf(z - q)
            if inner <= 0.0:
                continue
            total += weight * half * _phi(z) * inner ** (k - 1)
    cdf = min(1.0, k * total)
    return min(1.0, max(0.0, 1.0 - cdf))


@dataclass(frozen=True)
class ScoreMatrix:
    """N documents by k models of F1 scores, with no missing cells."""

    doc_ids: tuple[str, ...]
    models: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "doc_ids", tuple(self.doc_ids))
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        if len(self.doc_ids) < 2:
            raise ValidationError("score matrix needs at least 2 documents")
        if len(self.models) < 2:
            raise ValidationError("score matrix needs at least 2 models")
        if len(self.rows) != len(self.doc_ids):
            raise ValidationError("row count must match doc_ids")
        for row in self.rows:
            if len(row) != len(self.models):
                raise ValidationError("every row must have one score per model")

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    @property
    def n_models(self) -> int:
        return len(self.models)

    @classmethod
    def from_reports(cls, reports: Iterable[ScoreReport]) -> "ScoreMatrix":
        """Assemble the matrix from per-(document, model) reports.

        Documents lacking a score for any model are excluded so that every
        remaining row is complete.
        """
        cells: dict[tuple[str, str], float] = {}
        for report in reports:
            key = (report.doc_id, report.model)
            if key in cells:
                raise ValidationError(
                    f"duplicate report for doc '{report.doc_id}', model '{report.model}'"
                )
            cells[key] = report.f1
        if not cells:
            raise ValidationError("no reports given")
        models = tuple(sorted({model for _, model in cells}))
        doc_ids = tuple(
            sorted(
                doc
                for doc in {doc for doc, _ in cells}
                if all((doc, model) in cells for model in models)
            )
        )
        rows = tuple(tuple(cells[(doc, model)] for model in models) for doc in doc_ids)
        return cls(doc_ids=doc_ids, models=models, rows=rows)


def _rank_row(row: Sequence[float]) -> list[float]:
    k = len(row)
    order = sorted(range(k), key=lambda j: -row[j])
    ranks = [0.0] * k
    i = 0
    while i < k:
        j = i
        while j + 1 < k and row[order[j + 1]] == row[order[i]]:
            j += 1
        averaged = (i + j) / 2.0 + 1.0  # mean of positions i..j, 1-based
        for pos in range(i, j + 1):
            ranks[order[pos]] = averaged
        i = j + 1
    return ranks


def rank_rows(matrix: ScoreMatrix) -> list[list[float]]:
    """Within-row ranks, 1 = highest score, ties averaged.

    Each row's ranks sum to k(k+1)/2.
    """
    return [_rank_row(row) for row in matrix.rows]


def friedman(matrix: ScoreMatrix) -> tuple[float, float]:
    """Tie-corrected Friedman statistic and its chi-square p-value.

    Requires k >= 3; with two models the chi-square approximation is not
    meaningful, use a sign test instead. A fully tied matrix (correction
    denominator zero) reports statistic 0 and p-value 1.
    """
    n, k = matrix.n_docs, matrix.n_models
    if k < 3:
        raise ValidationError(
            "Friedman chi-square needs at least 3 models; for 2 use a sign test"
        )
    ranks = rank_rows(matrix)
    column_sums = [sum(row[j] for row in ranks) for j in range(k)]
    sum_squares = sum(s * s for s in column_sums)
    raw = (12.0 * sum_squares) / (n * k * (k + 1)) - 3.0 * n * (k + 1)

    tie_total = 0
    for row in matrix.rows:
        for size in Counter(row).values():
            tie_total += size**3 - size
    correction = 1.0 - tie_total / (n * (k**3 - k))
    if correction == 0.0:
        return 0.0, 1.0
    statistic = max(raw / correction, 0.0)
    return statistic, chi2_sf(statistic, k - 1)


def posthoc(matrix: ScoreMatrix) -> list[list[float]]:
    """Pairwise mean-rank p-value matrix; symmetric with a unit diagonal.

    The statistic |mean_rank_i - mean_rank_j| / sqrt(k(k+1)/(6N)) is referred
    to the studentized range for k groups and infinite degrees of freedom
    (with the sqrt(2) rescaling that convention implies).
    """
    n, k = matrix.n_docs, matrix.n_models
    ranks = rank_rows(matrix)
    mean_ranks = [sum(row[j] for row in ranks) / n for j in range(k)]
    scale = math.sqrt(k * (k + 1) / (6.0 * n))
    table = [[1.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            q = abs(mean_ranks[i] - mean_ranks[j]) / scale
            p = studentized_range_sf(q * _SQRT2, k)
            table[i][j] = p
            table[j][i] = p
    return table


def top_rank_tally(matrix: ScoreMatrix) -> dict[str, float]:
    """Fraction of documents on which each model scores highest.

    A tie for the row maximum splits the row's single credit equally, so the
    fractions always sum to 1.
    """
    n, k = matrix.n_docs, matrix.n_models
    credit = [0.0] * k
    for row in matrix.rows:
        top = max(row)
        winners = [j for j in range(k) if row[j] == top]
        share = 1.0 / len(winners)
        for j in winners:
            credit[j] += share
    return {model: credit[j] / n for j, model in enumerate(matrix.models)}


@dataclass(frozen=True)
class ComparisonResult:
    """Everything the model comparison produces, ready for serialization."""

    matrix: ScoreMatrix
    friedman_statistic: float
    p_value: float
    posthoc: tuple[tuple[float, ...], ...]
    top_rank: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "posthoc", tuple(tuple(row) for row in self.posthoc))
        object.__setattr__(self, "top_rank", dict(self.top_rank))


def compare_models(matrix: ScoreMatrix) -> ComparisonResult:
    """Run the omnibus test, the pairwise follow-up, and the rank tally."""
    statistic, p_value = friedman(matrix)
    return ComparisonResult(
        matrix=matrix,
        friedman_statistic=statistic,
        p_value=p_value,
        posthoc=tuple(tuple(row) for row in posthoc(matrix)),
        top_rank=top_rank_tally(matrix),
    )
