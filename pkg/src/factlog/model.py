"""Dependency-graph data model.

A sentence is a rooted, labeled graph over tokens.  Freshly ingested parses
are trees (one incoming edge per token, a single root edge from the virtual
root 0); rewrite stages may relax this to a DAG with several clause roots,
so tree-ness is checked explicitly where an operation requires it instead of
being baked into the container.
"""

from __future__ import annotations

import copy as _copy
from dataclasses import dataclass, field, replace

VIRTUAL_ROOT = 0

NOMINAL_UPOS = {"NOUN", "PRON", "PROPN", "ADJ"}


class FactlogError(Exception):
    """Base class for errors raised by this package."""


class StructureError(FactlogError):
    """A parse violates a structural requirement (multiple roots, cycle...)."""


class TrainingError(FactlogError):
    """A training annotation cannot be turned into a valence pattern."""


class DisambiguationError(FactlogError):
    """A role filler cannot be looked up in the synset graph."""


class AuthoringError(FactlogError):
    """A clause triggered frames but produced no usable candidate."""


class MixedCoordinationError(FactlogError):
    """A coordination mixes 'and' and 'or' connectives."""


def label_matches(label: str, base: str) -> bool:
    """True if a dependency label equals ``base`` or is a subtype of it.

    UD subtypes extend a base label with a colon (nsubj:pass, acl:relcl).
    """
    return label == base or label.startswith(base + ":")


@dataclass(frozen=True)
class Edge:
    """A directed dependency edge head -> dep. head 0 is the virtual root."""

    head: int
    dep: int
    label: str

    def __post_init__(self):
        if not self.label:
            raise StructureError("edge label must be nonempty")


@dataclass
class Token:
    token_id: int
    surface: str
    lemma: str
    upos: str
    xpos: str
    ne_tag: str = "o"
    upos_conf: float = 1.0
    xpos_conf: float = 1.0
    validation: str = "unchecked"  # accepted | rejected | unchecked

    def copy(self) -> "Token":
        return replace(self)


@dataclass
class CoordGroup:
    """A coordination: member token ids (position order) and its connective."""

    members: list[int]
    connective: str  # "and" | "or"
    root_member: int


@dataclass
class DependencyParse:
    """One parse of one sentence.

    Tokens are keyed by their 1-based position; rewrites may delete tokens
    but never renumber the survivors.
    """

    sentence_id: int
    parse_id: int
    tokens: dict[int, Token]
    edges: list[Edge]
    confidence: float = 1.0
    coord_groups: list[CoordGroup] = field(default_factory=list)

    # -- basic views -------------------------------------------------------

    def token_ids(self) -> list[int]:
        return sorted(self.tokens)

    def token(self, token_id: int) -> Token:
        return self.tokens[token_id]

    def out_edges(self, token_id: int) -> list[Edge]:
        return sorted((e for e in self.edges if e.head == token_id),
                      key=lambda e: (e.dep, e.label))

    def in_edges(self, token_id: int) -> list[Edge]:
        return sorted((e for e in self.edges if e.dep == token_id),
                      key=lambda e: (e.head, e.label))

    def head_edge(self, token_id: int) -> Edge | None:
        """The unique incoming edge, or None if the token has none."""
        incoming = self.in_edges(token_id)
        if not incoming:
            return None
        if len(incoming) > 1:
            raise StructureError(
                f"sentence {self.sentence_id}: token {token_id} has "
                f"{len(incoming)} incoming edges; not a tree")
        return incoming[0]

    def root_id(self) -> int:
        roots = [e.dep for e in self.edges if e.head == VIRTUAL_ROOT]
        if len(roots) != 1:
            raise StructureError(
                f"sentence {self.sentence_id}: expected exactly one root, "
                f"found {len(roots)}")
        return roots[0]

    def root_ids(self) -> list[int]:
        return sorted(e.dep for e in self.edges if e.head == VIRTUAL_ROOT)

    def dependents(self, token_id: int, base_label: str) -> list[Edge]:
        """Outgoing edges whose label matches base_label (subtypes included)."""
        return [e for e in self.out_edges(token_id)
                if label_matches(e.label, base_label)]

    def dependents_exact(self, token_id: int, label: str) -> list[Edge]:
        return [e for e in self.out_edges(token_id) if e.label == label]

    # -- edits (used by rewrite stages; callers copy first) ----------------

    def add_edge(self, head: int, dep: int, label: str) -> Edge:
        edge = Edge(head, dep, label)
        if edge not in self.edges:
            self.edges.append(edge)
        return edge

    def remove_edge(self, edge: Edge) -> None:
        self.edges.remove(edge)

    def remove_token(self, token_id: int) -> None:
        """Drop a token and every edge incident to it."""
        del self.tokens[token_id]
        self.edges = [e for e in self.edges
                      if e.head != token_id and e.dep != token_id]

    def copy(self) -> "DependencyParse":
        return DependencyParse(
            sentence_id=self.sentence_id,
            parse_id=self.parse_id,
            tokens={i: t.copy() for i, t in self.tokens.items()},
            edges=list(self.edges),
            confidence=self.confidence,
            coord_groups=[_copy.deepcopy(g) for g in self.coord_groups],
        )

    # -- validation --------------------------------------------------------

    def validate_tree(self) -> None:
        """Raise StructureError unless the edges form a single rooted tree."""
        ids = set(self.tokens)
        for e in self.edges:
            if e.dep not in ids or (e.head != VIRTUAL_ROOT and e.head not in ids):
                raise StructureError(
                    f"sentence {self.sentence_id}: edge {e} references "
                    f"a missing token")
        root = self.root_id()
        head_of: dict[int, int] = {}
        for e in self.edges:
            if e.dep in head_of:
                raise StructureError(
                    f"sentence {self.sentence_id}: token {e.dep} has "
                    f"multiple heads")
            head_of[e.dep] = e.head
        missing = ids - set(head_of)
        if missing:
            raise StructureError(
                f"sentence {self.sentence_id}: tokens without a head: "
                f"{sorted(missing)}")
        # every token must reach the virtual root without revisiting a node
        for t in ids:
            seen = set()
            cur = t
            while cur != VIRTUAL_ROOT:
                if cur in seen:
                    raise StructureError(
                        f"sentence {self.sentence_id}: cycle through "
                        f"token {cur}")
                seen.add(cur)
                cur = head_of[cur]
        assert root in ids

    def set_validation(self, tag: str) -> None:
        for t in self.tokens.values():
            t.validation = tag


@dataclass
class ParseSet:
    """Confidence-ranked alternative parses of one sentence."""

    sentence_text: str
    parses: list[DependencyParse]

    def __post_init__(self):
        if not self.parses:
            raise StructureError("a parse set must contain at least one parse")
        confs = [p.confidence for p in self.parses]
        if any(a < b for a, b in zip(confs, confs[1:])):
            raise StructureError(
                f"parse confidences must be non-increasing, got {confs}")

    @property
    def sentence_id(self) -> int:
        return self.parses[0].sentence_id

    def best(self) -> DependencyParse:
        return self.parses[0]
