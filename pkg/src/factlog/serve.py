"""HTTP+JSON serve mode backing the authoring UI.

Endpoints: POST /author (sentence -> facts or violations, with the token
encoding and rewrite trace for inspection), POST /parse (k-best envelope),
GET /frames (valence-pattern listing), POST /evaluate (score two fact
documents).  Parses come from the fixture corpus or, when configured, the
parser-adapter service.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .config import PipelineConfig
from .envelope import AdapterClient, envelope_to_parse_set, parse_set_to_envelope
from .evaluate import evaluate_documents
from .model import FactlogError, ParseSet
from .pipeline import AuthoringResult, FactualAuthor


def normalize_sentence(text: str) -> str:
    text = text.strip()
    if text.endswith("."):
        text = text[:-1].rstrip()
    return text


class AuthoringService:
    """Request-independent state: stores, fixture corpus, adapter client."""

    def __init__(self, author: FactualAuthor, fixture_sets: list[ParseSet],
                 config: PipelineConfig | None = None):
        self.author = author
        self.config = config or PipelineConfig()
        self.fixtures = {normalize_sentence(ps.sentence_text): ps
                         for ps in fixture_sets}
        self.adapter = (AdapterClient(self.config.adapter_url)
                        if self.config.adapter_url else None)
        self.session_facts: list[str] = []

    def lookup(self, sentence: str) -> tuple[ParseSet, object] | None:
        key = normalize_sentence(sentence)
        if key in self.fixtures:
            return self.fixtures[key], None
        if self.adapter is not None:
            envelope = self.adapter.parse(sentence)
            return envelope_to_parse_set(envelope)
        return None

    def author_text(self, sentence: str) -> dict:
        found = self.lookup(sentence)
        if found is None:
            return {"status": "unknown_sentence",
                    "message": f"no parse available for {sentence!r}; "
                               f"running without an adapter"}
        parse_set, kbest = found
        reparser = self.adapter.reparser if self.adapter else None
        result = self.author.predict_one(parse_set, kbest=kbest,
                                         reparser=reparser)
        payload = result_to_json(result)
        payload["parse"] = parse_set_to_envelope(parse_set)["parses"][0]
        if result.status == "ok":
            self.session_facts.extend(
                fact.serialize() for fact in result.facts)
        return payload


def result_to_json(result: AuthoringResult) -> dict:
    return {
        "status": result.status,
        "sentence_id": result.sentence_id,
        "text": result.text,
        "connective": result.connective,
        "ulr": result.serialized(),
        "facts": [{
            "fid": f.fid,
            "frame": f.frame,
            "roles": [{"rid": r.rid, "role": r.role, "lemma": r.lemma,
                       "synset": r.synset} for r in f.roles],
        } for f in result.facts],
        "violations": [{"property": v.property_id, "token": v.token_id,
                        "detail": v.detail, "message": str(v)}
                       for v in result.violations],
        "error": result.error,
        "token_facts": result.token_facts,
        "trace": [e.to_json() for e in result.trace.entries]
        if result.trace else [],
        "correction": result.correction_status,
        "applied_fixes": [{"token": f.token_id, "kind": f.kind,
                           "old": f.old, "new": f.new}
                          for f in result.applied_fixes],
    }


def make_handler(service: AuthoringService):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _send(self, status: int, payload: dict):
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_json(self) -> dict:
            length = int(self.headers.get("Content-Length", "0"))
            if not length:
                return {}
            return json.loads(self.rfile.read(length).decode("utf-8"))

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods",
                             "GET, POST, OPTIONS")
            self.end_headers()

        def do_GET(self):
            if self.path == "/frames":
                store = service.author.store_
                self._send(200, {
                    "count": len(store) if store else 0,
                    "lvps": [lvp.serialize() for lvp in store] if store else [],
                })
            elif self.path == "/session":
                self._send(200, {"facts": service.session_facts})
            else:
                self._send(404, {"error": f"unknown path {self.path}"})

        def do_POST(self):
            try:
                payload = self._read_json()
                if self.path == "/author":
                    sentence = payload.get("sentence", "")
                    if not sentence.strip():
                        self._send(400, {"error": "empty sentence"})
                        return
                    self._send(200, service.author_text(sentence))
                elif self.path == "/parse":
                    found = service.lookup(payload.get("sentence", ""))
                    if found is None:
                        self._send(404, {"error": "no parse available"})
                        return
                    parse_set = found[0]
                    envelope = parse_set_to_envelope(parse_set)
                    k = payload.get("k")
                    if isinstance(k, int) and k > 0:
                        envelope["parses"] = envelope["parses"][:k]
                    self._send(200, envelope)
                elif self.path == "/evaluate":
                    report = evaluate_documents(payload["system"],
                                                payload["gold"])
                    self._send(200, report.to_json())
                else:
                    self._send(404, {"error": f"unknown path {self.path}"})
            except FactlogError as exc:
                self._send(400, {"error": str(exc)})
            except Exception as exc:  # noqa: BLE001 - report, don't crash
                self._send(500, {"error": f"{type(exc).__name__}: {exc}"})

    return Handler


def serve(service: AuthoringService, host: str = "127.0.0.1",
          port: int = 8023) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), make_handler(service))
    return server
