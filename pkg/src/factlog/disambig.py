"""Role-filler disambiguation over a weighted synset graph.

Each frame role is bound to a synset; a filler's sense is the candidate
synset cheapest to reach from the role synset by accumulated edge weight,
searched within a hop budget (uniform-cost search, which reduces to
breadth-first when all weights are equal).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import inf

from .frames import CandidateParse
from .model import DisambiguationError, FactlogError

DEFAULT_HOP_LIMIT = 5


@dataclass(frozen=True)
class RoleSynsetBinding:
    """The synset that characterizes a frame role's expected fillers."""

    frame: str
    role: str
    synset: str


@dataclass
class SynsetGraph:
    glosses: dict[str, str] = field(default_factory=dict)
    lemma_index: dict[str, list[str]] = field(default_factory=dict)
    adjacency: dict[str, list[tuple[str, str, float]]] = field(
        default_factory=dict)  # node -> [(neighbor, relation, weight)]

    def synsets_of(self, lemma: str) -> list[str]:
        try:
            return self.lemma_index[lemma]
        except KeyError:
            raise DisambiguationError(f"lemma {lemma!r} has no synsets")

    def max_edge_weight(self) -> float:
        weights = [w for edges in self.adjacency.values()
                   for _, _, w in edges]
        return max(weights) if weights else 1.0


def load_synset_graph(path) -> tuple[SynsetGraph, dict[tuple[str, str], str]]:
    """Read the line-oriented graph file.

    Line kinds: ``node <id> <gloss...>``, ``lemma <lemma...> <id>...``,
    ``edge <id> <id> <relation> <weight>`` and ``role <frame> <role> <id>``
    (the role-to-synset bindings).  Referential integrity is enforced.
    """
    graph = SynsetGraph()
    bindings: dict[tuple[str, str], str] = {}
    pending: list[tuple[int, list[str]]] = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            kind, _, rest = line.partition(" ")
            if kind == "node":
                node_id, _, gloss = rest.partition(" ")
                if node_id in graph.glosses:
                    raise FactlogError(f"line {lineno}: duplicate node {node_id}")
                graph.glosses[node_id] = gloss
                graph.adjacency.setdefault(node_id, [])
            elif kind in ("lemma", "edge", "role"):
                pending.append((lineno, line.split()))
            else:
                raise FactlogError(f"line {lineno}: unknown record {kind!r}")

    for lineno, fields in pending:
        kind = fields[0]
        if kind == "lemma":
            ids = [f for f in fields[1:] if f.startswith("bn:")]
            words = fields[1:len(fields) - len(ids)]
            lemma = " ".join(words)
            if not lemma or not ids:
                raise FactlogError(f"line {lineno}: bad lemma record")
            for node_id in ids:
                if node_id not in graph.glosses:
                    raise FactlogError(
                        f"line {lineno}: lemma {lemma!r} references unknown "
                        f"synset {node_id}")
            graph.lemma_index[lemma] = ids
        elif kind == "edge":
            if len(fields) != 5:
                raise FactlogError(f"line {lineno}: bad edge record")
            _, a, b, relation, weight_s = fields
            weight = float(weight_s)
            if weight <= 0:
                raise FactlogError(f"line {lineno}: weight must be positive")
            for node_id in (a, b):
                if node_id not in graph.glosses:
                    raise FactlogError(
                        f"line {lineno}: edge references unknown synset "
                        f"{node_id}")
            graph.adjacency[a].append((b, relation, weight))
        elif kind == "role":
            if len(fields) != 4:
                raise FactlogError(f"line {lineno}: bad role record")
            _, frame, role, node_id = fields
            if node_id not in graph.glosses:
                raise FactlogError(
                    f"line {lineno}: role {frame}/{role} references unknown "
                    f"synset {node_id}")
            bindings[(frame, role)] = node_id
    return graph, bindings


def hop_bounded_costs(graph: SynsetGraph, source: str,
                      hop_limit: int) -> dict[str, float]:
    """Cheapest accumulated cost from source to every reachable node using
    at most hop_limit edges (uniform-cost search over (node, hops) states)."""
    best: dict[tuple[str, int], float] = {}
    result: dict[str, float] = {}
    heap = [(0.0, 0, source)]
    while heap:
        cost, hops, node = heapq.heappop(heap)
        if best.get((node, hops), inf) < cost:
            continue
        best[(node, hops)] = cost
        if cost < result.get(node, inf):
            result[node] = cost
        if hops == hop_limit:
            continue
        for neighbor, _relation, weight in graph.adjacency.get(node, []):
            state = (neighbor, hops + 1)
            new_cost = cost + weight
            if new_cost < best.get(state, inf):
                best[state] = new_cost
                heapq.heappush(heap, (new_cost, hops + 1, neighbor))
    return result


@dataclass
class SenseChoice:
    synset: str
    cost: float
    unreachable: bool


def disambiguate(role_binding: RoleSynsetBinding, filler_lemma: str,
                 graph: SynsetGraph,
                 hop_limit: int = DEFAULT_HOP_LIMIT) -> SenseChoice:
    """Pick the filler synset cheapest to reach from the role synset.

    Ties resolve to the smallest synset id; if no candidate is reachable
    within the hop budget the first-listed synset is returned flagged with
    infinite cost.  Unknown lemmas raise DisambiguationError.
    """
    candidates = graph.synsets_of(filler_lemma)
    costs = hop_bounded_costs(graph, role_binding.synset, hop_limit)
    reachable = [(costs[c], c) for c in candidates if c in costs]
    if not reachable:
        return SenseChoice(candidates[0], inf, True)
    cost, synset = min(reachable)
    return SenseChoice(synset, cost, False)


@dataclass
class ScoredFiller:
    role: str
    token_id: int
    lemma: str
    synset: str | None
    cost: float
    unreachable: bool


@dataclass
class ScoredCandidate:
    candidate: CandidateParse
    fillers: list[ScoredFiller]
    score: float


def default_infinite_penalty(graph: SynsetGraph,
                             hop_limit: int = DEFAULT_HOP_LIMIT) -> float:
    return 10.0 * graph.max_edge_weight() * hop_limit


def disambiguate_candidate(candidate: CandidateParse,
                           bindings: dict[tuple[str, str], str],
                           graph: SynsetGraph,
                           hop_limit: int = DEFAULT_HOP_LIMIT,
                           infinite_penalty: float | None = None,
                           ) -> ScoredCandidate:
    """Annotate every filler with its sense; the candidate score sums the
    finite costs, with a large configured penalty per unresolvable filler."""
    if infinite_penalty is None:
        infinite_penalty = default_infinite_penalty(graph, hop_limit)
    fillers = []
    score = 0.0
    for role, token_id, lemma in candidate.fillers:
        key = (candidate.frame, role)
        if key not in bindings:
            raise FactlogError(
                f"no synset binding for role {role} of frame {candidate.frame}")
        binding = RoleSynsetBinding(candidate.frame, role, bindings[key])
        try:
            choice = disambiguate(binding, lemma, graph, hop_limit)
        except DisambiguationError:
            fillers.append(ScoredFiller(role, token_id, lemma, None,
                                        inf, True))
            score += infinite_penalty
            continue
        fillers.append(ScoredFiller(role, token_id, lemma, choice.synset,
                                    choice.cost, choice.unreachable))
        score += infinite_penalty if choice.unreachable else choice.cost
    return ScoredCandidate(candidate, fillers, score)
