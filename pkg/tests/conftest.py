from __future__ import annotations

import json
import threading
from collections import Counter
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from softfact import Fact, FactSet, Side, TypedEntity
from softfact.corpus import DocumentRecord
from softfact.similarity import SimilarityProvider

TYPE_POOL = ("Person", "Drug", "Org", "Time")

# multi-token predicates with partial trigram overlap, so weighted sums are
# real floating-point work rather than 0/1 tallies
PREDICATE_POOL = (
    "treats",
    "treats daily",
    "helps treat",
    "cures",
    "relieves pain",
)


def mk_fact(subject: str, predicate: str, obj: str, subject_type: str = "Person") -> Fact:
    return Fact(
        subject=TypedEntity(text=subject, entity_type=subject_type),
        predicate=predicate,
        object=obj,
    )


def mk_factset(side, facts, doc_id="doc", model=None) -> FactSet:
    if side is Side.TARGET and model is None:
        model = "m"
    return FactSet(doc_id=doc_id, side=side, facts=facts, model=model)


def random_factset(rng, side, doc_id="doc", model=None, max_facts=6, alphabet=5) -> FactSet:
    facts = []
    for _ in range(rng.randint(0, max_facts)):
        facts.append(
            mk_fact(
                subject=f"s{rng.randrange(alphabet)}",
                predicate=PREDICATE_POOL[rng.randrange(alphabet)],
                obj=f"o{rng.randrange(alphabet)}",
                subject_type=rng.choice(TYPE_POOL),
            )
        )
    return mk_factset(side, facts, doc_id=doc_id, model=model)


def make_document(source_facts, targets, doc_id="doc") -> DocumentRecord:
    source = mk_factset(Side.SOURCE, source_facts, doc_id=doc_id)
    target_sets = {
        model: mk_factset(Side.TARGET, facts, doc_id=doc_id, model=model)
        for model, facts in targets.items()
    }
    bag = Counter(f.subject.entity_type for f in source.facts)
    return DocumentRecord(doc_id=doc_id, source=source, targets=target_sets, type_bag=bag)


class ConstantProvider(SimilarityProvider):
    name = "constant"

    def __init__(self, value: float, identity_one: bool = True):
        self.value = value
        self.identity_one = identity_one

    def score(self, a: str, b: str) -> float:
        if self.identity_one and a == b:
            return 1.0
        return self.value


class _StubHandler(BaseHTTPRequestHandler):
    def do_POST(self):
        length = int(self.headers.get("Content-Length", "0"))
        body = json.loads(self.rfile.read(length))
        server = self.server
        server.requests_served += 1
        if self.path != "/similarity":
            self.send_error(404)
            return
        behavior = server.behavior
        if behavior == "broken-status":
            self.send_error(500)
            return
        if behavior == "broken-body":
            payload = b"not json at all"
        else:
            scores = [server.score_fn(a, b) for a, b in body["pairs"]]
            if behavior == "short-scores":
                scores = scores[:-1]
            payload = json.dumps({"scores": scores}).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, *args):  # keep test output quiet
        pass


class SimilarityStub:
    """In-process HTTP service speaking the provider wire protocol."""

    def __init__(self, score_fn=None, behavior="ok"):
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
        self._server.score_fn = score_fn or (lambda a, b: 1.0 if a == b else 0.5)
        self._server.behavior = behavior
        self._server.requests_served = 0
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}"

    @property
    def requests_served(self) -> int:
        return self._server.requests_served

    def close(self) -> None:
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture
def similarity_stub():
    stubs = []

    def factory(score_fn=None, behavior="ok") -> SimilarityStub:
        stub = SimilarityStub(score_fn=score_fn, behavior=behavior)
        stubs.append(stub)
        return stub

    yield factory
    for stub in stubs:
        stub.close()
