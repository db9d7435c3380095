"""Construction and serialization of unique logical representations.

A sentence contributes one fact per clause per coordinated choice; facts of
one sentence are emitted jointly (a conjunction).  Frame ids run fid_1.. in
emission order; role ids are minted per underlying entity token, so the
modified noun of an adnominal clause keeps one rid across clauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .disambig import ScoredCandidate
from .model import (VIRTUAL_ROOT, AuthoringError, CoordGroup, DependencyParse,
                    MixedCoordinationError, label_matches)
from .terms import Term, atom, iter_terms, quoted


@dataclass
class Clause:
    """A frame-parsing unit: its root tokens (several only when the clause
    roots are coordinated) and every token in scope."""

    root_ids: list[int]
    token_ids: set[int]
    is_main: bool


def _reach(parse: DependencyParse, starts: list[int],
           blocked: set[int] | None = None) -> set[int]:
    """Tokens reachable from starts via out-edges, never descending through
    an adnominal edge or into a blocked token."""
    blocked = blocked or set()
    seen = set()
    frontier = [s for s in starts if s not in blocked]
    seen.update(frontier)
    while frontier:
        nxt = []
        for node in frontier:
            for e in parse.out_edges(node):
                if label_matches(e.label, "acl"):
                    continue
                if e.dep in blocked or e.dep in seen:
                    continue
                seen.add(e.dep)
                nxt.append(e.dep)
        frontier = nxt
    return seen


def segment_clauses(parse: DependencyParse) -> list[Clause]:
    """Main clause first, then each adnominal clause in token order.

    Adnominal clause roots are the targets of surviving acl/acl:relcl edges
    plus verbs left without an incoming edge by the subject-restoring flip.
    Coordinated clause roots collapse into one clause."""
    main_roots = sorted({e.dep for e in parse.edges if e.head == VIRTUAL_ROOT})
    with_in_edge = {e.dep for e in parse.edges}
    adnominal_roots = sorted(
        {e.dep for e in parse.edges if label_matches(e.label, "acl")}
        | {tid for tid in parse.token_ids()
           if tid not in with_in_edge and parse.out_edges(tid)})

    group_of: dict[int, int] = {}
    for i, group in enumerate(parse.coord_groups):
        for member in group.members:
            group_of[member] = i

    clauses: list[Clause] = []
    if main_roots:
        clauses.append(Clause(main_roots, set(), True))
    for root in adnominal_roots:
        if root in main_roots:
            continue
        placed = False
        for clause in clauses:
            if not clause.is_main and any(
                    group_of.get(r) is not None
                    and group_of.get(r) == group_of.get(root)
                    for r in clause.root_ids):
                clause.root_ids.append(root)
                placed = True
                break
        if not placed:
            clauses.append(Clause([root], set(), False))
    for clause in clauses:
        clause.token_ids = _reach(parse, clause.root_ids) | set(clause.root_ids)
    return clauses


def _choices(groups: list[CoordGroup]):
    ordered = sorted(groups, key=lambda g: min(g.members))
    member_lists = [sorted(g.members) for g in ordered]
    # product() of zero lists yields one empty choice
    return ordered, list(product(*member_lists))


def shared_connective(groups: list[CoordGroup]) -> str:
    kinds = {g.connective for g in groups}
    if len(kinds) > 1:
        raise MixedCoordinationError(
            f"groups mix connectives {sorted(kinds)}")
    return kinds.pop() if kinds else "and"


@dataclass
class ExpansionResult:
    parses: list[DependencyParse]
    connective: str


def expand_coordinations(parse: DependencyParse,
                         groups: list[CoordGroup] | None = None,
                         ) -> ExpansionResult:
    """One coordination-free parse per coordinated choice.

    Output count is exactly the product of the group sizes; each output
    keeps the chosen element of every group with all copied edges intact."""
    groups = parse.coord_groups if groups is None else groups
    connective = shared_connective(groups)
    if not groups:
        return ExpansionResult([parse], connective)

    ordered, choices = _choices(groups)
    all_members = {m for g in ordered for m in g.members}
    with_in_edge = {e.dep for e in parse.edges}
    starts_base = sorted(
        {e.dep for e in parse.edges if e.head == VIRTUAL_ROOT}
        | {tid for tid in parse.token_ids() if tid not in with_in_edge})

    variants = []
    for sigma in choices:
        chosen = set(sigma)
        excluded = all_members - chosen
        seen = set()
        frontier = [s for s in starts_base if s not in excluded]
        seen.update(frontier)
        while frontier:
            nxt = []
            for node in frontier:
                for e in parse.out_edges(node):
                    if e.dep in excluded or e.dep in seen:
                        continue
                    seen.add(e.dep)
                    nxt.append(e.dep)
            frontier = nxt
        variant = DependencyParse(
            sentence_id=parse.sentence_id,
            parse_id=parse.parse_id,
            tokens={tid: parse.token(tid).copy() for tid in seen},
            edges=[e for e in parse.edges
                   if e.dep in seen and (e.head in seen
                                         or e.head == VIRTUAL_ROOT)],
            confidence=parse.confidence,
        )
        variants.append(variant)
    return ExpansionResult(variants, connective)


def clause_variants(parse: DependencyParse, clause: Clause,
                    ) -> list[tuple[tuple[int, ...], DependencyParse]]:
    """Per-clause coordinated choices: applicable groups are those fully
    inside the clause; returns (choice, restricted parse) pairs."""
    applicable = [g for g in parse.coord_groups
                  if set(g.members) <= clause.token_ids]
    ordered, choices = _choices(applicable)
    all_members = {m for g in ordered for m in g.members}
    results = []
    for sigma in choices:
        chosen = set(sigma)
        excluded = all_members - chosen
        starts = [r for r in clause.root_ids if r not in excluded]
        kept = _reach(parse, starts, blocked=excluded)
        sub = DependencyParse(
            sentence_id=parse.sentence_id,
            parse_id=parse.parse_id,
            tokens={tid: parse.token(tid) for tid in kept},
            edges=[e for e in parse.edges
                   if e.dep in kept and e.head in kept],
            confidence=parse.confidence,
        )
        results.append((sigma, sub))
    return results


@dataclass(frozen=True)
class RoleSlot:
    rid: int
    role: str
    lemma: str
    synset: str | None


@dataclass
class UlrFact:
    fid: int
    frame: str
    roles: tuple[RoleSlot, ...]

    def serialize(self) -> str:
        inner = ",".join(
            f"role(rid_{r.rid},{quoted(r.role)},{atom(r.lemma)},"
            f"{quoted(r.synset) if r.synset is not None else quoted('na')})"
            for r in self.roles)
        return f"ulr(fid_{self.fid},{quoted(self.frame)},[{inner}])."


def build_ulr(scored_candidates: list[ScoredCandidate],
              clause_labels: list[str] | None = None) -> list[UlrFact]:
    """Turn the winning candidate of each clause/choice into facts.

    Entity tokens shared across clauses reuse one rid; ids are assigned in
    emission order.  A None candidate marks a clause whose triggered frames
    all failed, which is an authoring error."""
    facts = []
    rid_of: dict[int, int] = {}
    for i, scored in enumerate(scored_candidates):
        if scored is None:
            label = (clause_labels[i] if clause_labels
                     and i < len(clause_labels) else f"clause {i + 1}")
            raise AuthoringError(
                f"no surviving frame candidate for {label}")
        slots = []
        for filler in scored.fillers:
            rid = rid_of.get(filler.token_id)
            if rid is None:
                rid = len(rid_of) + 1
                rid_of[filler.token_id] = rid
            slots.append(RoleSlot(rid, filler.role, filler.lemma,
                                  filler.synset))
        facts.append(UlrFact(len(facts) + 1, scored.candidate.frame,
                             tuple(slots)))
    return facts


def serialize_ulr(facts: list[UlrFact]) -> str:
    """One fact per line, roles in pattern-declaration order."""
    return "\n".join(f.serialize() for f in facts) + ("\n" if facts else "")


def canonical_facts(facts: list[UlrFact], level: str = "synset") -> list[str]:
    """Order- and id-insensitive view of a fact list, for equality checks.

    Each fact is rendered without its ids (per-fact canonical form) and the
    list is sorted; `level` controls whether synsets are included."""
    rendered = []
    for fact in facts:
        if level == "frame":
            rendered.append(fact.frame)
            continue
        parts = []
        for r in fact.roles:
            if level == "role":
                parts.append(f"{r.role}={r.lemma}")
            else:
                parts.append(f"{r.role}={r.lemma}/{r.synset or 'na'}")
        rendered.append(f"{fact.frame}({','.join(parts)})")
    return sorted(rendered)


def parse_ulr_text(text: str) -> tuple[list[UlrFact], str]:
    """Read serialized facts back; returns (facts, connective)."""
    facts = []
    connective = "and"
    for term in iter_terms(text):
        if isinstance(term, Term) and term.functor == "connective":
            connective = term.args[0]
            continue
        if not (isinstance(term, Term) and term.functor == "ulr"):
            raise AuthoringError(f"expected ulr/3 term, got {term!r}")
        fid_atom, frame, roles = term.args
        slots = []
        for role_term in roles:
            rid_atom, role, lemma, synset = role_term.args
            slots.append(RoleSlot(int(str(rid_atom).split("_")[1]), role,
                                  lemma, None if synset == "na" else synset))
        facts.append(UlrFact(int(str(fid_atom).split("_")[1]), frame,
                             tuple(slots)))
    return facts, connective
