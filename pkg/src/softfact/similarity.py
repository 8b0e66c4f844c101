"""Soft predicate similarity.

Three pieces live here: the provider contract every backend must satisfy
(scores in [-1, 1], symmetric, exactly 1.0 for identical strings), a fully
deterministic character-trigram baseline that keeps the engine hermetic, and
an HTTP client for plugging in an external embedding backend.

The baseline embeds each token by hashing the character trigrams of
"^token$" into 256 buckets with 64-bit FNV-1a (bucket = hash mod 256, one
count per trigram) and L2-normalizing the bucket vector. Two strings are
compared greedily: each token is matched to its best-cosine counterpart on
the other side, the two directional means are combined by harmonic mean when
both are positive, and by their minimum otherwise. Identical tokens score
exactly 1.0 by construction, and every result is clipped to [-1, 1].

Summations are carried out in fixed order with numpy pairwise reduction, so
identical inputs produce bit-identical scores across runs and platforms.
"""

from __future__ import annotations

import json
import logging
import math
import threading
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
import requests

from .errors import ProviderError

logger = logging.getLogger(__name__)

EMBED_DIM = 256

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash; stable across platforms and Python versions."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _U64
    return h


@lru_cache(maxsize=65536)
def trigram_embed(token: str) -> np.ndarray:
    """Unit-norm 256-bucket embedding of a token's character trigrams.

    The token is padded to "^token$" before windowing, so a single-character
    token still yields one trigram.
    """
    if not token:
        raise ValueError("token must be non-empty")
    padded = f"^{token}$"
    counts = np.zeros(EMBED_DIM, dtype=np.float64)
    for i in range(len(padded) - 2):
        bucket = fnv1a64(padded[i : i + 3].encode("utf-8")) % EMBED_DIM
        counts[bucket] += 1.0
    norm = math.sqrt(float(np.sum(counts * counts)))
    vector = counts / norm
    vector.flags.writeable = False
    return vector


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    return min(1.0, max(-1.0, float(np.sum(u * v))))


def greedy_match_score(
    a: str, b: str, embed: Callable[[str], np.ndarray] = trigram_embed
) -> float:
    """Greedy token-level similarity of two strings, in [-1, 1].

    Symmetric by construction and exactly 1.0 for identical token lists.
    """
    tokens_a = a.split()
    tokens_b = b.split()
    if not tokens_a or not tokens_b:
        raise ValueError("unscorable predicate: no tokens after whitespace split")
    vecs_a = [embed(t) for t in tokens_a]
    vecs_b = [embed(t) for t in tokens_b]

    def best(token: str, vec: np.ndarray, others: list[str], other_vecs) -> float:
        top = -1.0
        for other, other_vec in zip(others, other_vecs):
            sim = 1.0 if token == other else _cosine(vec, other_vec)
            if sim > top:
                top = sim
        return top

    recall_sim = sum(
        best(t, v, tokens_b, vecs_b) for t, v in zip(tokens_a, vecs_a)
    ) / len(tokens_a)
    precision_sim = sum(
        best(t, v, tokens_a, vecs_a) for t, v in zip(tokens_b, vecs_b)
    ) / len(tokens_b)
    if recall_sim > 0.0 and precision_sim > 0.0:
        return 2.0 * recall_sim * precision_sim / (recall_sim + precision_sim)
    return min(recall_sim, precision_sim)


class SimilarityProvider:
    """Contract for similarity backends.

    Implementations guarantee score(a, b) in [-1, 1], score(a, a) == 1.0 for
    non-empty a, and symmetry (the baseline by construction; external
    backends by declared conformance).
    """

    name: str = "abstract"

    def score(self, a: str, b: str) -> float:
        raise NotImplementedError

    def score_many(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return [self.score(a, b) for a, b in pairs]


class TrigramProvider(SimilarityProvider):
    """The built-in deterministic baseline."""

    name = "trigram"

    def score(self, a: str, b: str) -> float:
        return greedy_match_score(a, b)


class ExternalProvider(SimilarityProvider):
    """Client for an external similarity service.

    Wire protocol: HTTP POST {url}/similarity with body
    ``{"pairs": [[a, b], ...]}`` answered by ``{"scores": [s, ...]}``,
    order-preserving, content-type application/json.

    Scores outside [-1, 1] are clamped with a warning; an identical pair
    that does not score 1.0 after clamping is a contract violation. Responses
    are cached per request payload for the lifetime of the provider, and the
    cache is safe under concurrent use. Transport failures, bad statuses, and
    malformed responses all raise ProviderError; values are never silently
    substituted.
    """

    name = "external"

    def __init__(self, url: str, timeout_ms: int = 10000, session: requests.Session | None = None):
        self.url = url.rstrip("/")
        self.timeout_ms = timeout_ms
        self.clamped = 0
        self._session = session or requests.Session()
        self._cache: dict[bytes, tuple[float, ...]] = {}
        self._lock = threading.Lock()

    def score(self, a: str, b: str) -> float:
        return self.score_many([(a, b)])[0]

    def score_many(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        if not pairs:
            raise ValueError("pairs must be non-empty")
        payload = json.dumps(
            {"pairs": [[a, b] for a, b in pairs]}, ensure_ascii=False, sort_keys=True
        ).encode("utf-8")
        with self._lock:
            cached = self._cache.get(payload)
        if cached is not None:
            return list(cached)

        scores = self._request(payload, len(pairs))
        checked = []
        for (a, b), raw in zip(pairs, scores):
            value = raw
            if value < -1.0 or value > 1.0:
                value = min(1.0, max(-1.0, value))
                with self._lock:
                    self.clamped += 1
                logger.warning(
                    "provider %s returned out-of-range score %r for (%r, %r); clamped to %r",
                    self.url, raw, a, b, value,
                )
            if a == b and value != 1.0:
                raise ProviderError(
                    f"provider violated identity contract: score({a!r}, {a!r}) = {value!r}, expected 1.0"
                )
            checked.append(value)
        with self._lock:
            self._cache[payload] = tuple(checked)
        return checked

    def _request(self, payload: bytes, expected: int) -> list[float]:
        try:
            response = self._session.post(
                self.url + "/similarity",
                data=payload,
                headers={"Content-Type": "application/json"},
                timeout=self.timeout_ms / 1000.0,
            )
        except requests.RequestException as exc:
            raise ProviderError(f"similarity request to {self.url} failed: {exc}") from exc
        if response.status_code != 200:
            raise ProviderError(
                f"similarity request to {self.url} failed: HTTP {response.status_code}"
            )
        try:
            body = response.json()
        except ValueError as exc:
            raise ProviderError(f"provider returned invalid JSON: {exc}") from exc
        scores = body.get("scores") if isinstance(body, dict) else None
        if not isinstance(scores, list) or len(scores) != expected:
            raise ProviderError(
                f"provider response must contain {expected} scores, got {scores!r}"
            )
        out = []
        for value in scores:
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ProviderError(f"provider returned non-numeric score {value!r}")
            out.append(float(value))
        return out
