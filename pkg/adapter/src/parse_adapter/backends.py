"""Parse backends: a fixture table for offline use and an optional wrapper
around a real neural pipeline.

Both produce k-best envelopes: ranked parses with per-token top-2 tag
alternatives and confidences.
"""

from __future__ import annotations

import copy
import json
from pathlib import Path


class BackendError(Exception):
    """The backend cannot produce parses (model missing, unknown input)."""

    def __init__(self, message: str, status: int = 500):
        super().__init__(message)
        self.status = status


def _normalize(sentence: str) -> str:
    sentence = sentence.strip()
    if sentence.endswith("."):
        sentence = sentence[:-1].rstrip()
    return sentence


class FixtureBackend:
    """Serves envelopes from a JSON table keyed by sentence text.

    Re-parsing with fixed tags re-ranks the stored parses: parses whose
    tags agree with the requested ones come first, the rest keep their
    own annotations and follow in their original order.  Confidences are
    reassigned in rank order so the envelope stays monotone.
    """

    def __init__(self, table: dict):
        self.table = {_normalize(k): v for k, v in table.items()}

    @classmethod
    def from_file(cls, path) -> "FixtureBackend":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    def sentences(self) -> list[str]:
        return sorted(self.table)

    def parse(self, sentence: str, k: int) -> dict:
        entry = self.table.get(_normalize(sentence))
        if entry is None:
            raise BackendError(f"no fixture parse for {sentence!r}", 404)
        parses = copy.deepcopy(entry["parses"][:k])
        return {"sentence": _normalize(sentence), "parses": parses}

    def reparse(self, sentence: str, tags: list[tuple[str, str]],
                k: int) -> dict:
        entry = self.table.get(_normalize(sentence))
        if entry is None:
            raise BackendError(f"no fixture parse for {sentence!r}", 404)
        parses = copy.deepcopy(entry["parses"])
        length = len(parses[0]["tokens"])
        if len(tags) != length:
            raise BackendError(
                f"tag list length {len(tags)} != token count {length}", 400)

        def matches(parse) -> bool:
            return all(tok["upos"] == u and tok["xpos"] == x
                       for tok, (u, x) in zip(parse["tokens"], tags))

        matching = [p for p in parses if matches(p)]
        rest = [p for p in parses if not matches(p)]
        ranked = (matching + rest)[:k]
        confidences = sorted((p["confidence"] for p in ranked), reverse=True)
        for parse, confidence in zip(ranked, confidences):
            parse["confidence"] = confidence
        return {"sentence": _normalize(sentence), "parses": ranked}


class NeuralBackend:
    """Wraps a pipelined neural parser when one is importable; kept thin on
    purpose: ranking and tag handling stay identical to the fixture path."""

    def __init__(self, language: str = "en"):
        try:
            import stanza  # noqa: F401
        except ImportError as exc:
            raise BackendError(
                f"neural pipeline unavailable: {exc}", 503) from exc
        self._stanza = stanza
        try:
            self.pipeline = stanza.Pipeline(
                language, processors="tokenize,pos,lemma,depparse,ner")
        except Exception as exc:  # noqa: BLE001 - model download/load
            raise BackendError(f"model load failure: {exc}", 503) from exc

    def parse(self, sentence: str, k: int) -> dict:
        doc = self.pipeline(sentence)
        tokens = []
        for word in doc.sentences[0].words:
            tokens.append({
                "id": word.id,
                "surface": word.text,
                "lemma": (word.lemma or word.text).lower(),
                "upos": word.upos,
                "xpos": word.xpos or "_",
                "head": word.head,
                "deprel": word.deprel,
                "ne": "o",
                "upos_alternatives": [[word.upos, 1.0]],
                "xpos_alternatives": [[word.xpos or "_", 1.0]],
            })
        return {"sentence": _normalize(sentence),
                "parses": [{"confidence": 1.0, "tokens": tokens}]}

    def reparse(self, sentence: str, tags, k: int) -> dict:
        envelope = self.parse(sentence, k)
        tokens = envelope["parses"][0]["tokens"]
        if len(tags) != len(tokens):
            raise BackendError(
                f"tag list length {len(tags)} != token count {len(tokens)}",
                400)
        for tok, (upos, xpos) in zip(tokens, tags):
            tok["upos"], tok["xpos"] = upos, xpos
        return envelope
