"""CoNLL-U ingestion and export.

The carrier is standard 10-column CoNLL-U.  Extensions live in comments and
the MISC column:

* ``# sent_id = <id>`` or ``# sent_id = <id>.<rank>`` — alternative parses
  of one sentence share the ``<id>`` part and are ranked by ``<rank>``
  (1 = best; a bare id means rank 1);
* ``# text = ...`` — the raw sentence;
* ``# confidence = <float>`` — parse-level confidence (default 1.0);
* MISC keys ``UposConf=``, ``XposConf=`` — per-tag confidences (default 1.0)
  and ``Ner=`` — named-entity class (default ``o``).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .model import (DependencyParse, Edge, FactlogError, ParseSet, Token)


class ConlluError(FactlogError):
    """A malformed CoNLL-U line; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class IngestOptions:
    lowercase_lemmas: bool = True
    default_confidence: float = 1.0
    validate: bool = True


def ingest_conllu(source, options: IngestOptions | None = None) -> list[ParseSet]:
    """Read CoNLL-U from a stream, path or string into ParseSets.

    Returns one ParseSet per sentence, parses ordered by decreasing
    confidence.  Raises ConlluError on malformed lines and StructureError
    (via validate_tree) on multiple roots or cycles.
    """
    options = options or IngestOptions()
    if isinstance(source, str) and "\n" not in source and source.endswith(".conllu"):
        with open(source, encoding="utf-8") as f:
            text = f.read()
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()

    parses: list[tuple[str, DependencyParse]] = []
    auto_id = 0
    for block_lines, start in _blocks(text):
        auto_id += 1
        sid, rank, sent_text, parse = _parse_block(block_lines, start, auto_id,
                                                   options)
        parse.parse_id = rank
        if options.validate:
            parse.validate_tree()
        parses.append((sent_text, parse))

    by_sentence: dict[int, list[tuple[str, DependencyParse]]] = {}
    for sent_text, parse in parses:
        by_sentence.setdefault(parse.sentence_id, []).append((sent_text, parse))

    sets = []
    for sid in sorted(by_sentence):
        entries = sorted(by_sentence[sid], key=lambda e: e[1].parse_id)
        text0 = next((t for t, _ in entries if t), "")
        if not text0:
            text0 = " ".join(tok.surface
                             for tok in entries[0][1].tokens.values())
        sets.append(ParseSet(text0, [p for _, p in entries]))
    return sets


def _blocks(text: str):
    """Yield (lines, first_lineno) per blank-line-separated block."""
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if line.strip() == "":
            if current:
                yield current, current[0][0]
                current = []
        else:
            current.append((lineno, line))
    if current:
        yield current, current[0][0]


def _parse_block(lines, start, auto_id, options):
    sid = auto_id
    rank = 1
    sent_text = ""
    confidence = options.default_confidence
    tokens: dict[int, Token] = {}
    edges: list[Edge] = []

    for lineno, line in lines:
        if line.startswith("#"):
            if "=" in line:
                key, _, value = line[1:].partition("=")
                key = key.strip()
                value = value.strip()
                if key == "sent_id":
                    sid, rank = _parse_sent_id(value, lineno)
                elif key == "text":
                    sent_text = value
                elif key == "confidence":
                    try:
                        confidence = float(value)
                    except ValueError:
                        raise ConlluError(lineno, f"bad confidence {value!r}")
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError(lineno,
                              f"expected 10 tab-separated columns, got {len(cols)}")
        tid_s, form, lemma, upos, xpos, _feats, head_s, deprel, _deps, misc = cols
        if "-" in tid_s or "." in tid_s:
            continue  # multiword ranges / empty nodes are not modeled
        try:
            tid = int(tid_s)
            head = int(head_s)
        except ValueError:
            raise ConlluError(lineno, f"non-integer id/head in {line!r}")
        if tid <= 0:
            raise ConlluError(lineno, f"token id must be positive, got {tid}")
        if not deprel or deprel == "_":
            raise ConlluError(lineno, "missing dependency relation")
        if tid in tokens:
            raise ConlluError(lineno, f"duplicate token id {tid}")
        misc_map = _parse_misc(misc)
        if options.lowercase_lemmas:
            lemma = lemma.lower()
        tokens[tid] = Token(
            token_id=tid,
            surface=form,
            lemma=lemma,
            upos=upos,
            xpos=xpos,
            ne_tag=misc_map.get("Ner", "o"),
            upos_conf=_conf(misc_map.get("UposConf"), lineno),
            xpos_conf=_conf(misc_map.get("XposConf"), lineno),
        )
        edges.append(Edge(head, tid, deprel))

    if not tokens:
        raise ConlluError(start, "block contains no token lines")
    parse = DependencyParse(sentence_id=sid, parse_id=rank, tokens=tokens,
                            edges=edges, confidence=confidence)
    return sid, rank, sent_text, parse


def _parse_sent_id(value: str, lineno: int) -> tuple[int, int]:
    parts = value.split(".")
    try:
        if len(parts) == 1:
            return int(parts[0]), 1
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise ConlluError(lineno, f"bad sent_id {value!r} (want <id> or <id>.<rank>)")


def _parse_misc(misc: str) -> dict[str, str]:
    if misc == "_" or not misc:
        return {}
    out = {}
    for item in misc.split("|"):
        key, sep, value = item.partition("=")
        if sep:
            out[key] = value
    return out


def _conf(value: str | None, lineno: int) -> float:
    if value is None:
        return 1.0
    try:
        conf = float(value)
    except ValueError:
        raise ConlluError(lineno, f"bad confidence value {value!r}")
    if not 0.0 <= conf <= 1.0:
        raise ConlluError(lineno, f"confidence {conf} outside [0,1]")
    return conf


def export_conllu(parse_sets: list[ParseSet]) -> str:
    """Inverse of ingest_conllu over the modeled fields."""
    out = io.StringIO()
    for pset in parse_sets:
        for parse in pset.parses:
            sid = (f"{parse.sentence_id}.{parse.parse_id}"
                   if parse.parse_id != 1 else str(parse.sentence_id))
            out.write(f"# sent_id = {sid}\n")
            out.write(f"# text = {pset.sentence_text}\n")
            if parse.confidence != 1.0:
                out.write(f"# confidence = {parse.confidence}\n")
            for tid in parse.token_ids():
                tok = parse.token(tid)
                head = parse.head_edge(tid)
                if head is None:
                    raise FactlogError(
                        f"token {tid} has no head; only tree-shaped parses "
                        f"can be exported")
                misc = []
                if tok.upos_conf != 1.0:
                    misc.append(f"UposConf={tok.upos_conf:g}")
                if tok.xpos_conf != 1.0:
                    misc.append(f"XposConf={tok.xpos_conf:g}")
                if tok.ne_tag != "o":
                    misc.append(f"Ner={tok.ne_tag}")
                out.write("\t".join([
                    str(tid), tok.surface, tok.lemma, tok.upos, tok.xpos, "_",
                    str(head.head), head.label, "_",
                    "|".join(misc) if misc else "_",
                ]) + "\n")
            out.write("\n")
    return out.getvalue()
