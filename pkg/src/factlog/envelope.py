"""The k-best parse envelope: the JSON wire format exchanged with the
parser adapter (POST /parse and POST /reparse) and served to the UI."""

from __future__ import annotations

import json
import urllib.request

from .correction import KBestTags, TokenTags
from .model import DependencyParse, Edge, FactlogError, ParseSet, Token


def parse_set_to_envelope(parse_set: ParseSet) -> dict:
    parses = []
    for parse in parse_set.parses:
        tokens = []
        for tid in parse.token_ids():
            tok = parse.token(tid)
            head = parse.head_edge(tid)
            tokens.append({
                "id": tid,
                "surface": tok.surface,
                "lemma": tok.lemma,
                "upos": tok.upos,
                "xpos": tok.xpos,
                "head": head.head,
                "deprel": head.label,
                "ne": tok.ne_tag,
                "upos_alternatives": [[tok.upos, tok.upos_conf]],
                "xpos_alternatives": [[tok.xpos, tok.xpos_conf]],
            })
        parses.append({"confidence": parse.confidence, "tokens": tokens})
    return {"sentence": parse_set.sentence_text, "parses": parses}


def envelope_to_parse_set(envelope: dict,
                          sentence_id: int = 1) -> tuple[ParseSet, KBestTags]:
    """Build the ranked ParseSet plus the top parse's k-best tags."""
    try:
        sentence = envelope["sentence"]
        parse_objs = envelope["parses"]
    except (KeyError, TypeError):
        raise FactlogError("envelope must carry 'sentence' and 'parses'")
    if not parse_objs:
        raise FactlogError("envelope carries no parses")
    parses = []
    kbest_tags: dict[int, TokenTags] = {}
    for rank, parse_obj in enumerate(parse_objs, start=1):
        tokens: dict[int, Token] = {}
        edges: list[Edge] = []
        for tok_obj in parse_obj["tokens"]:
            tid = tok_obj["id"]
            upos_alts = tok_obj.get("upos_alternatives") or [[tok_obj["upos"], 1.0]]
            xpos_alts = tok_obj.get("xpos_alternatives") or [[tok_obj["xpos"], 1.0]]
            tokens[tid] = Token(
                token_id=tid,
                surface=tok_obj["surface"],
                lemma=tok_obj["lemma"].lower(),
                upos=tok_obj["upos"],
                xpos=tok_obj["xpos"],
                ne_tag=tok_obj.get("ne", "o"),
                upos_conf=float(upos_alts[0][1]),
                xpos_conf=float(xpos_alts[0][1]),
            )
            edges.append(Edge(tok_obj["head"], tid, tok_obj["deprel"]))
            if rank == 1:
                kbest_tags[tid] = TokenTags(
                    upos=[(t, float(c)) for t, c in upos_alts],
                    xpos=[(t, float(c)) for t, c in xpos_alts])
        parse = DependencyParse(sentence_id=sentence_id, parse_id=rank,
                                tokens=tokens, edges=edges,
                                confidence=float(parse_obj.get("confidence", 1.0)))
        parse.validate_tree()
        parses.append(parse)
    return ParseSet(sentence, parses), KBestTags(kbest_tags)


def _post_json(url: str, payload: dict, timeout: float = 10.0) -> dict:
    request = urllib.request.Request(
        url, data=json.dumps(payload).encode("utf-8"),
        headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(request, timeout=timeout) as response:
        return json.loads(response.read().decode("utf-8"))


class AdapterClient:
    """Thin HTTP client for the parser-adapter service."""

    def __init__(self, base_url: str, timeout: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def parse(self, sentence: str, k: int = 3) -> dict:
        return _post_json(f"{self.base_url}/parse",
                          {"sentence": sentence, "k": k}, self.timeout)

    def reparse(self, sentence: str, tags: list[tuple[str, str]],
                k: int = 3) -> dict:
        return _post_json(f"{self.base_url}/reparse",
                          {"sentence": sentence,
                           "tags": [list(t) for t in tags], "k": k},
                          self.timeout)

    def reparser(self, sentence: str, tags: list[tuple[str, str]]) -> ParseSet:
        envelope = self.reparse(sentence, tags)
        parse_set, _ = envelope_to_parse_set(envelope)
        return parse_set
