"""Corrective graph rewrites that remove surface-form variation.

The stages run in a fixed order: entity compaction, particle/lemma
normalization, adnominal-clause subject restoration, coordination
equalization, passive-to-active conversion.  Each stage is pure; the
composition can fan out into several parse variants (one per passive
by-phrase choice) and records a replayable trace of its edits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .entities import compact_entities
from .model import (CoordGroup, DependencyParse, Edge, MixedCoordinationError,
                    label_matches)

RELATIVE_PRONOUNS = {"that", "who", "which"}
RELATIVE_MARKERS = {"where", "when", "why", "which"}

# edge labels never propagated across coordination members
_NO_COPY_LABELS = {"conj", "cc", "punct"}


@dataclass
class TraceEntry:
    rule: str
    token_ids: list[int]
    edges_removed: list[Edge] = field(default_factory=list)
    edges_added: list[Edge] = field(default_factory=list)
    tokens_removed: list[int] = field(default_factory=list)
    fields_set: dict[int, dict[str, str]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "tokens": self.token_ids,
            "edges_removed": [[e.head, e.dep, e.label] for e in self.edges_removed],
            "edges_added": [[e.head, e.dep, e.label] for e in self.edges_added],
            "tokens_removed": self.tokens_removed,
            "fields_set": self.fields_set,
        }


class RewriteTrace:
    """Ordered log of rewrite edits; replaying them on the input parse
    reproduces the output."""

    def __init__(self):
        self.entries: list[TraceEntry] = []

    def append_entry(self, **kwargs) -> None:
        self.entries.append(TraceEntry(**kwargs))

    def replay(self, parse: DependencyParse) -> DependencyParse:
        out = parse.copy()
        for entry in self.entries:
            for tid, fields in entry.fields_set.items():
                for name, value in fields.items():
                    setattr(out.token(tid), name, value)
            for e in entry.edges_removed:
                if e in out.edges:
                    out.remove_edge(e)
            for e in entry.edges_added:
                out.add_edge(e.head, e.dep, e.label)
            for tid in entry.tokens_removed:
                if tid in out.tokens:
                    out.remove_token(tid)
        return out

    def to_json_lines(self) -> str:
        import json
        return "\n".join(json.dumps(e.to_json()) for e in self.entries)


@dataclass
class NormalizationConfig:
    """Lemma overrides (keyed by lowercased surface) and an optional
    particle-verb whitelist; an empty whitelist allows every merge."""

    lemma_overrides: dict[str, str] = field(default_factory=dict)
    particle_whitelist: set[str] = field(default_factory=set)

    @classmethod
    def load(cls, path) -> "NormalizationConfig":
        overrides = {}
        particles = set()
        with open(path, encoding="utf-8") as f:
            for raw in f:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "\t" in line:
                    surface, lemma = line.split("\t", 1)
                    overrides[surface.strip().lower()] = lemma.strip()
                else:
                    particles.add(line)
        return cls(overrides, particles)


def merge_particles_and_lemmas(parse: DependencyParse,
                               lexicon: NormalizationConfig | None = None,
                               trace: RewriteTrace | None = None,
                               ) -> DependencyParse:
    """Fold compound:prt particles into their verb's lemma, apply lemma
    overrides, and relabel indirect objects to obl:to."""
    lexicon = lexicon or NormalizationConfig()
    out = parse.copy()
    changed = False

    for tid in list(out.token_ids()):
        if tid not in out.tokens:
            continue
        tok = out.token(tid)
        for e in out.dependents_exact(tid, "compound:prt"):
            particle = out.token(e.dep)
            merged = f"{tok.lemma}_{particle.lemma}"
            if lexicon.particle_whitelist and merged not in lexicon.particle_whitelist:
                continue
            moved = []
            for child in out.out_edges(e.dep):
                out.remove_edge(child)
                moved.append(out.add_edge(tid, child.dep, child.label))
            removed_edge = e
            fields = {tid: {"lemma": merged,
                            "surface": f"{tok.surface} {particle.surface}"}}
            out.remove_token(e.dep)
            tok.lemma = merged
            tok.surface = fields[tid]["surface"]
            changed = True
            if trace is not None:
                trace.append_entry(rule="merge_particle",
                                   token_ids=[tid, removed_edge.dep],
                                   edges_removed=[removed_edge],
                                   edges_added=moved,
                                   tokens_removed=[removed_edge.dep],
                                   fields_set=fields)

    for tid in out.token_ids():
        tok = out.token(tid)
        override = lexicon.lemma_overrides.get(tok.surface.lower())
        if override and tok.lemma != override:
            tok.lemma = override
            changed = True
            if trace is not None:
                trace.append_entry(rule="lemma_override", token_ids=[tid],
                                   fields_set={tid: {"lemma": override}})

    for e in list(out.edges):
        if e.label == "iobj":
            out.remove_edge(e)
            new = out.add_edge(e.head, e.dep, "obl:to")
            changed = True
            if trace is not None:
                trace.append_entry(rule="indirect_object",
                                   token_ids=[e.dep],
                                   edges_removed=[e], edges_added=[new])

    return out if changed else parse


def rewrite_adnominal(parse: DependencyParse,
                      trace: RewriteTrace | None = None) -> DependencyParse:
    """Recover the role the modified noun plays inside its adnominal clause.

    Reduced clauses (acl, no subject) get the noun as subject via an edge
    flip; relative clauses get their introductory word replaced by the noun.
    """
    out = parse.copy()
    changed = False
    for tid in list(out.token_ids()):
        if tid not in out.tokens:
            continue
        head = None
        for e in out.in_edges(tid):
            if label_matches(e.label, "acl"):
                head = e
                break
        if head is None:
            continue
        v1, v2 = tid, head.head
        xpos = out.token(v1).xpos

        if head.label == "acl":
            if out.dependents(v1, "nsubj"):
                continue
            if xpos in ("VBG", "VB"):
                new_label = "nsubj"
            elif xpos == "VBN":
                new_label = "nsubj:pass"
            else:
                continue
            out.remove_edge(head)
            added = out.add_edge(v1, v2, new_label)
            changed = True
            if trace is not None:
                trace.append_entry(rule="adnominal_flip", token_ids=[v1, v2],
                                   edges_removed=[head], edges_added=[added])
        elif head.label == "acl:relcl":
            if _replace_intro_word(out, v1, v2, trace):
                changed = True
    return out if changed else parse


def _replace_intro_word(parse: DependencyParse, v1: int, v2: int,
                        trace) -> bool:
    for labels, lemmas, relabel in (
            (("nsubj", "nsubj:pass", "obj", "obl"), RELATIVE_PRONOUNS, None),
            (("mark",), RELATIVE_MARKERS, "obl")):
        for e in parse.out_edges(v1):
            if e.label not in labels:
                continue
            if e.dep not in parse.tokens:
                continue
            intro = parse.token(e.dep)
            if intro.lemma not in lemmas:
                continue
            removed = [e]
            parse.remove_edge(e)
            added = [parse.add_edge(v1, v2, relabel or e.label)]
            for child in parse.out_edges(e.dep):
                parse.remove_edge(child)
                removed.append(child)
                added.append(parse.add_edge(v2, child.dep, child.label))
            dropped = e.dep
            parse.remove_token(dropped)
            if trace is not None:
                trace.append_entry(rule="adnominal_intro_word",
                                   token_ids=[v1, v2, dropped],
                                   edges_removed=removed, edges_added=added,
                                   tokens_removed=[dropped])
            return True
    return False


def _detect_coordinations(parse: DependencyParse):
    """(root element, members in position order, connective) per closure."""
    found = []
    for tid in parse.token_ids():
        if not parse.dependents_exact(tid, "conj"):
            continue
        head = parse.head_edge(tid) if len(parse.in_edges(tid)) == 1 else None
        if head is not None and head.label == "conj":
            continue
        members = {tid}
        frontier = [tid]
        while frontier:
            nxt = []
            for m in frontier:
                for e in parse.dependents_exact(m, "conj"):
                    if e.dep not in members:
                        members.add(e.dep)
                        nxt.append(e.dep)
            frontier = nxt
        connectives = set()
        for m in members:
            for e in parse.dependents_exact(m, "cc"):
                connectives.add(parse.token(e.dep).lemma)
        if len(connectives) > 1:
            raise MixedCoordinationError(
                f"mixed coordination at tokens {sorted(members)}")
        connective = connectives.pop() if connectives else "and"
        found.append((tid, sorted(members), connective))
    return found


def _from_adnominal_verb(parse: DependencyParse, edge: Edge) -> bool:
    """True for edges hanging off an adnominal clause verb: such edges mark
    the noun's role inside its modifier clause (restored by the adnominal
    rewrite) and must not spread across a coordination."""
    if edge.head == 0:
        return False
    incoming = parse.in_edges(edge.head)
    if not incoming:
        return True  # a clause verb detached by the subject-restoring flip
    return any(label_matches(e.label, "acl") for e in incoming)


def equalize_coordination(parse: DependencyParse,
                          trace: RewriteTrace | None = None,
                          ) -> DependencyParse:
    """Give every coordination member the root element's edges.

    The root element's incoming edges replace each member's conj edge; its
    outgoing edges (except conj/cc/punct) are copied to members that lack an
    edge with the same label.  Edges that tie the root element into one of
    its own adnominal clauses stay where they are.  A group record is
    attached for the coordinated-choice expansion downstream.
    """
    coords = _detect_coordinations(parse)
    if not coords:
        return parse
    out = parse.copy()
    for el_root, members, connective in coords:
        removed = []
        added = []
        for m in members:
            if m == el_root:
                continue
            for e in list(out.in_edges(m)):
                if e.label == "conj":
                    out.remove_edge(e)
                    removed.append(e)
            for e in list(out.in_edges(el_root)):
                if _from_adnominal_verb(out, e):
                    continue
                added.append(out.add_edge(e.head, m, e.label))
            existing = {e.label for e in out.out_edges(m)}
            for e in list(out.out_edges(el_root)):
                if e.label in _NO_COPY_LABELS or e.label in existing:
                    continue
                if e.dep in members:
                    continue
                added.append(out.add_edge(m, e.dep, e.label))
        out.coord_groups.append(CoordGroup(members=members,
                                           connective=connective,
                                           root_member=el_root))
        if trace is not None:
            trace.append_entry(rule="equalize_coordination",
                               token_ids=members, edges_removed=removed,
                               edges_added=added)
    return out


def _passive_predicates(parse: DependencyParse) -> list[int]:
    out = []
    for tid in parse.token_ids():
        if (parse.dependents_exact(tid, "aux:pass")
                or parse.dependents_exact(tid, "nsubj:pass")):
            out.append(tid)
    return out


def normalize_passive(parse: DependencyParse,
                      trace: RewriteTrace | None = None,
                      ) -> list[DependencyParse]:
    """Convert passive predicates to their active shape.

    With n by-phrases the clause becomes n variants, each promoting one
    by-phrase to subject; with none, the patient simply becomes the object
    and the clause stays subject-less.  The passive auxiliary is detached."""
    predicates = _passive_predicates(parse)
    if not predicates:
        return [parse]
    variants = [parse.copy()]
    for pred in predicates:
        next_variants = []
        for variant in variants:
            next_variants.extend(_normalize_one(variant, pred, trace))
        variants = next_variants
    return variants


def _normalize_one(parse: DependencyParse, pred: int,
                   trace) -> list[DependencyParse]:
    by_edges = parse.dependents_exact(pred, "obl:by")
    if not by_edges:
        _rewrite_passive(parse, pred, None, trace)
        return [parse]
    out = []
    for chosen in by_edges:
        variant = parse.copy()
        _rewrite_passive(variant, pred, chosen, trace)
        out.append(variant)
    return out


def _rewrite_passive(parse: DependencyParse, pred: int,
                     chosen_by: Edge | None, trace) -> None:
    removed = []
    added = []
    tokens_removed = []
    for e in parse.dependents_exact(pred, "nsubj:pass"):
        parse.remove_edge(e)
        removed.append(e)
        added.append(parse.add_edge(pred, e.dep, "obj"))
    if chosen_by is not None:
        parse.remove_edge(chosen_by)
        removed.append(chosen_by)
        added.append(parse.add_edge(pred, chosen_by.dep, "nsubj"))
    for e in parse.dependents_exact(pred, "aux:pass"):
        for child in parse.out_edges(e.dep):
            parse.remove_edge(child)
            removed.append(child)
            added.append(parse.add_edge(pred, child.dep, child.label))
        removed.append(e)
        tokens_removed.append(e.dep)
        parse.remove_token(e.dep)
    if trace is not None:
        trace.append_entry(rule="normalize_passive", token_ids=[pred],
                           edges_removed=removed, edges_added=added,
                           tokens_removed=tokens_removed)


def paraparse(parse: DependencyParse,
              lexicon: NormalizationConfig | None = None,
              trace: RewriteTrace | None = None,
              ) -> list[DependencyParse]:
    """Full rewrite composition; returns the parse variants handed to
    frame-based parsing."""
    staged = compact_entities(parse, trace)
    staged = merge_particles_and_lemmas(staged, lexicon, trace)
    staged = rewrite_adnominal(staged, trace)
    staged = equalize_coordination(staged, trace)
    return normalize_passive(staged, trace)
