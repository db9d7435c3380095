"""Shared test utilities: a compact parse builder, random generators, and
independent oracles (kept deliberately separate from the implementations
they check)."""

from __future__ import annotations

import random
import re

from factlog.model import DependencyParse, Edge, ParseSet, Token

UD_LABELS = ["nsubj", "obj", "obl", "det", "amod", "advmod", "nmod", "case",
             "mark", "cop", "aux", "compound", "cc", "conj"]
UPOS_POOL = ["NOUN", "VERB", "ADJ", "ADV", "PROPN", "DET", "ADP", "AUX", "PRON"]
XPOS_POOL = ["NN", "VBZ", "VBD", "JJ", "RB", "NNP", "DT", "IN", "MD", "PRP"]
NE_POOL = ["o", "o", "o", "s_person", "s_gpe", "s_org"]
LEMMAS = ["mary", "car", "buy", "watch", "house", "run", "fast", "red",
          "john", "sell", "city", "walk", "book", "give", "old"]


def build_parse(rows, sentence_id=1, parse_id=1, confidence=1.0):
    """rows: (surface, lemma, upos, xpos, head, deprel[, ne_tag]) per token,
    1-based implicit ids."""
    tokens = {}
    edges = []
    for i, row in enumerate(rows, start=1):
        surface, lemma, upos, xpos, head, deprel = row[:6]
        ne = row[6] if len(row) > 6 else "o"
        tokens[i] = Token(i, surface, lemma, upos, xpos, ne_tag=ne)
        edges.append(Edge(head, i, deprel))
    return DependencyParse(sentence_id=sentence_id, parse_id=parse_id,
                           tokens=tokens, edges=edges, confidence=confidence)


def random_tree_parse(rng: random.Random, n: int, sentence_id=1) -> DependencyParse:
    """A random dependency tree over n tokens (not necessarily projective)."""
    root = rng.randrange(1, n + 1)
    rows = []
    order = [root] + [i for i in range(1, n + 1) if i != root]
    rng.shuffle(order[1:])
    attached = {root}
    head_of = {root: (0, "root")}
    for tid in order[1:]:
        head = rng.choice(sorted(attached))
        head_of[tid] = (head, rng.choice([l for l in UD_LABELS if l != "conj"]))
        attached.add(tid)
    for i in range(1, n + 1):
        head, label = head_of[i]
        rows.append((rng.choice(LEMMAS).capitalize(), rng.choice(LEMMAS),
                     rng.choice(UPOS_POOL), rng.choice(XPOS_POOL),
                     head, label, rng.choice(NE_POOL)))
    return build_parse(rows, sentence_id=sentence_id)


def random_parse_set(rng: random.Random, sentence_id: int) -> ParseSet:
    n = rng.randint(1, 10)
    parse = random_tree_parse(rng, n, sentence_id)
    for tok in parse.tokens.values():
        tok.upos_conf = round(rng.uniform(0.5, 1.0), 2)
        tok.xpos_conf = round(rng.uniform(0.5, 1.0), 2)
    parse.confidence = round(rng.uniform(0.5, 1.0), 2)
    text = " ".join(parse.token(t).surface for t in parse.token_ids())
    return ParseSet(text, [parse])


# --- oracles ---------------------------------------------------------------

def crossing_arcs_oracle(parse: DependencyParse) -> bool:
    """Brute-force pairwise arc-crossing test, virtual-root arc included."""
    arcs = [tuple(sorted((e.head, e.dep))) for e in parse.edges]
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            (a, b), (c, d) = arcs[i], arcs[j]
            if len({a, b, c, d}) < 4:
                continue
            inside_c = a < c < b
            inside_d = a < d < b
            if inside_c != inside_d:
                return True
    return False


def entity_spans_oracle(parse: DependencyParse) -> list[list[int]]:
    """Position-scan detection of mergeable named-entity runs."""
    ids = parse.token_ids()
    spans = []
    used = set()
    for start in ids:
        if start in used or parse.token(start).upos != "PROPN":
            continue
        head_edge = parse.head_edge(start)
        if head_edge is not None and head_edge.label in ("flat", "compound"):
            continue
        span = [start]
        nxt = start + 1
        while nxt in parse.tokens:
            edge = parse.head_edge(nxt)
            if edge is not None and edge.head in span and edge.label in (
                    "flat", "compound"):
                span.append(nxt)
                nxt += 1
            else:
                break
        if len(span) > 1:
            spans.append(span)
            used.update(span)
    return spans


def hop_dp_costs_oracle(adjacency: dict, source: str,
                        hop_limit: int) -> dict:
    """Bellman-Ford style DP over hop counts: best[v] after <= h edges."""
    inf = float("inf")
    best = {source: 0.0}
    overall = {source: 0.0}
    for _ in range(hop_limit):
        nxt = dict(best)
        for u, cost in best.items():
            for v, _rel, w in adjacency.get(u, []):
                if cost + w < nxt.get(v, inf):
                    nxt[v] = cost + w
        best = nxt
        for v, c in best.items():
            if c < overall.get(v, inf):
                overall[v] = c
    return overall


TOKEN_FACT = re.compile(
    r"^token\(index\((\d+),(\d+),(\d+)\),"
    r"(?:'((?:[^'\\]|\\.)*)'|([a-z][a-zA-Z0-9_]*)),"
    r"\[(.*)\],"
    r"edge\(index\((\d+),(\d+)\),([^)]*)\),"
    r"([a-z0-9_']+),([^,]+),"
    r"index\((\d+),(\d+)\),"
    r"([^,]+),(accepted|rejected|unchecked)\)\.$")


def read_token_facts(text: str) -> list[dict]:
    """Parse serialized token facts back into dicts (test-side reader)."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        match = TOKEN_FACT.match(line.strip())
        assert match, f"unparseable token fact: {line!r}"
        groups = match.groups()
        edge_items = []
        body = groups[5]
        for m in re.finditer(r"edge\(index\((\d+),(\d+)\),([^)]*)\)", body):
            edge_items.append((int(m.group(2)), m.group(3).strip("'")))
        out.append({
            "sentence": int(groups[0]),
            "token": int(groups[1]),
            "parse": int(groups[2]),
            "lemma": groups[3] if groups[3] is not None else groups[4],
            "edges": edge_items,
            "head": int(groups[7]),
            "head_label": groups[8].strip("'"),
            "upos": groups[9].strip("'"),
            "xpos": groups[10].strip("'"),
            "root": int(groups[12]),
            "ne": groups[13].strip("'"),
            "validation": groups[14],
        })
    return out
