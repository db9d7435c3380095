"""Learning and application of logical valence patterns.

A valence pattern maps a lexical unit (lemma + POS) to a frame and, per
role, a path of labeled dependency steps from the lexical unit to the
role filler.  Patterns are learned from annotated training sentences as
the shortest such path on the rewritten graph, and applied by walking the
recorded steps.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product

from .model import VIRTUAL_ROOT, DependencyParse, ParseSet, TrainingError
from .terms import Term, atom, iter_terms, quoted

OUT = "out"
IN = "in"

Step = tuple[str, str]  # (edge label, direction)


@dataclass(frozen=True)
class RolePattern:
    role: str
    path: tuple[Step, ...]
    required: bool

    def path_string(self, lu_pos: str) -> str:
        parts = [lu_pos]
        for label, direction in self.path:
            parts.append(("->" if direction == OUT else "<-") + label)
        return "".join(parts)


def path_from_string(text: str) -> tuple[str, tuple[Step, ...]]:
    """Inverse of RolePattern.path_string: (lu_pos, steps)."""
    import re
    pieces = re.split(r"(->|<-)", text)
    lu_pos = pieces[0]
    steps = []
    for i in range(1, len(pieces) - 1, 2):
        direction = OUT if pieces[i] == "->" else IN
        steps.append((pieces[i + 1], direction))
    return lu_pos, tuple(steps)


@dataclass(frozen=True)
class Lvp:
    lu_lemma: str
    lu_pos: str  # lowercase universal POS
    frame: str
    patterns: tuple[RolePattern, ...]

    def serialize(self) -> str:
        inner = ",".join(
            f"pattern({quoted(p.role)},{quoted(p.path_string(self.lu_pos))},"
            f"{'required' if p.required else 'optional'})"
            for p in self.patterns)
        return (f"lvp({atom(self.lu_lemma)},{atom(self.lu_pos)},"
                f"{quoted(self.frame)},[{inner}]).")


@dataclass
class TrainingAnnotation:
    sentence: str
    frame: str
    lu_index: int
    role_specs: list[tuple[str, int, bool]]  # (role, position, required)
    extra_lus: list[tuple[str, str]]  # (lemma, pos)


@dataclass
class Rejection:
    """A triggered pattern that could not fill a required role."""

    frame: str
    missing_role: str


@dataclass
class CandidateParse:
    frame: str
    fillers: list[tuple[str, int, str]]  # (role, token id, lemma)
    source_parse_id: int
    lu_token_id: int

    def serialize(self) -> str:
        inner = ",".join(f"role({quoted(role)},{quoted(lemma)})"
                         for role, _tid, lemma in self.fillers)
        return f"p({quoted(self.frame)},[{inner}])."


class LvpStore:
    """Immutable-after-training collection of valence patterns, unique per
    (lemma, pos, frame)."""

    def __init__(self):
        self._by_lu: dict[tuple[str, str], list[Lvp]] = {}
        self._order: list[Lvp] = []

    def add(self, lvp: Lvp) -> None:
        bucket = self._by_lu.setdefault((lvp.lu_lemma, lvp.lu_pos), [])
        for existing in bucket:
            if existing.frame == lvp.frame:
                if existing.patterns == lvp.patterns:
                    return
                raise TrainingError(
                    f"conflicting patterns for ({lvp.lu_lemma}, {lvp.lu_pos}, "
                    f"{lvp.frame})")
        bucket.append(lvp)
        self._order.append(lvp)

    def lookup(self, lemma: str, pos: str) -> list[Lvp]:
        return list(self._by_lu.get((lemma, pos.lower()), []))

    def __len__(self):
        return len(self._order)

    def __iter__(self):
        return iter(self._order)

    def serialize(self) -> str:
        return "\n".join(lvp.serialize() for lvp in self._order) + (
            "\n" if self._order else "")

    @classmethod
    def from_dump(cls, text: str) -> "LvpStore":
        store = cls()
        for term in iter_terms(text):
            if not isinstance(term, Term) or term.functor != "lvp":
                raise TrainingError(f"expected lvp/4 term, got {term!r}")
            lemma, pos, frame, patterns = term.args
            role_patterns = []
            for p in patterns:
                role, path_text, req = p.args
                _pos, steps = path_from_string(path_text)
                role_patterns.append(
                    RolePattern(role, steps, req == "required"))
            store.add(Lvp(lemma, pos, frame, tuple(role_patterns)))
        return store


def parse_training_term(term) -> TrainingAnnotation:
    if not isinstance(term, Term) or term.functor != "train" or len(term.args) != 5:
        raise TrainingError(f"expected train/5 term, got {term!r}")
    sentence, frame, lu_part, roles, extra = term.args
    if not (isinstance(lu_part, Term) and lu_part.functor == "="
            and lu_part.args[0] == "LUIndex"):
        raise TrainingError(f"third argument must be 'LUIndex'=N in {term}")
    role_specs = []
    for spec in roles:
        if not (isinstance(spec, Term) and spec.functor == "="):
            raise TrainingError(f"bad role spec {spec!r}")
        role, rhs = spec.args
        if not (isinstance(rhs, Term) and rhs.functor == "+"):
            raise TrainingError(f"bad role spec {spec!r}")
        position, req = rhs.args
        role_specs.append((role, position, req == "required"))
    extra_lus = [(lemma, pos) for lemma, pos in extra]
    return TrainingAnnotation(sentence, frame, lu_part.args[1], role_specs,
                              extra_lus)


def read_training_file(text: str) -> list[TrainingAnnotation]:
    return [parse_training_term(t) for t in iter_terms(text)]


def _shortest_path(parse: DependencyParse, start: int, goal: int,
                   ) -> tuple[Step, ...] | None:
    """Shortest label path start -> goal, following edges either way;
    equal-length ties resolve to the lexicographically smallest step list."""
    heap: list[tuple[int, tuple[Step, ...], int]] = [(0, (), start)]
    seen: set[int] = set()
    while heap:
        length, path, node = heapq.heappop(heap)
        if node == goal:
            return path
        if node in seen:
            continue
        seen.add(node)
        for e in parse.out_edges(node):
            if e.dep not in seen:
                heapq.heappush(heap,
                               (length + 1, path + ((e.label, OUT),), e.dep))
        for e in parse.in_edges(node):
            if e.head != VIRTUAL_ROOT and e.head not in seen:
                heapq.heappush(heap,
                               (length + 1, path + ((e.label, IN),), e.head))
    return None


def learn_lvp(annotation: TrainingAnnotation,
              parse: DependencyParse) -> list[Lvp]:
    """Build one pattern list from an annotated (and already rewritten)
    training parse; returns one Lvp per lexical unit, extras included."""
    lu_id = annotation.lu_index
    if lu_id not in parse.tokens:
        raise TrainingError(
            f"lexical-unit position {lu_id} not present in the parse of "
            f"{annotation.sentence!r}")
    lu = parse.token(lu_id)
    patterns = []
    for role, position, required in annotation.role_specs:
        if position == lu_id:
            raise TrainingError(
                f"role {role} coincides with the lexical unit in "
                f"{annotation.sentence!r}")
        if position not in parse.tokens:
            raise TrainingError(
                f"role {role} position {position} not present in the parse "
                f"of {annotation.sentence!r}")
        path = _shortest_path(parse, lu_id, position)
        if path is None:
            raise TrainingError(
                f"role {role} is unreachable from the lexical unit in "
                f"{annotation.sentence!r}")
        patterns.append(RolePattern(role, path, required))

    lus = [(lu.lemma, lu.upos.lower())] + [
        (lemma, pos) for lemma, pos in annotation.extra_lus]
    return [Lvp(lemma, pos, annotation.frame, tuple(patterns))
            for lemma, pos in lus]


def trigger_lvps(parse: DependencyParse, store: LvpStore) -> list[Lvp]:
    """Every pattern whose lexical unit matches some token, in token order."""
    triggered: list[Lvp] = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        for lvp in store.lookup(tok.lemma, tok.upos):
            if lvp not in triggered:
                triggered.append(lvp)
    return triggered


def lu_occurrences(parse: DependencyParse, lvp: Lvp) -> list[int]:
    return [tid for tid in parse.token_ids()
            if parse.token(tid).lemma == lvp.lu_lemma
            and parse.token(tid).upos.lower() == lvp.lu_pos]


def walk_path(parse: DependencyParse, start: int,
              path: tuple[Step, ...]) -> list[int]:
    """All tokens reached by the step sequence, in position order."""
    frontier = [start]
    for label, direction in path:
        nxt: list[int] = []
        for node in frontier:
            if direction == OUT:
                hits = [e.dep for e in parse.out_edges(node)
                        if e.label == label]
            else:
                hits = [e.head for e in parse.in_edges(node)
                        if e.label == label and e.head != VIRTUAL_ROOT]
            for h in hits:
                if h not in nxt:
                    nxt.append(h)
        frontier = sorted(nxt)
        if not frontier:
            return []
    return frontier


def apply_lvp(lvp: Lvp, parse: DependencyParse,
              lu_token_id: int | None = None) -> CandidateParse | Rejection:
    """Extract the leftmost filler assignment for a triggered pattern."""
    results = apply_lvp_all(lvp, parse, lu_token_id)
    if isinstance(results, Rejection):
        return results
    return results[0]


def apply_lvp_all(lvp: Lvp, parse: DependencyParse,
                  lu_token_id: int | None = None,
                  ) -> list[CandidateParse] | Rejection:
    """All consistent filler assignments (leftmost first), or the rejection
    naming the first required role that found no filler."""
    if lu_token_id is None:
        occurrences = lu_occurrences(parse, lvp)
        if not occurrences:
            return Rejection(lvp.frame, "<lexical unit>")
        lu_token_id = occurrences[0]

    per_role: list[tuple[RolePattern, list[int | None]]] = []
    for pattern in lvp.patterns:
        matches = walk_path(parse, lu_token_id, pattern.path)
        if not matches:
            if pattern.required:
                return Rejection(lvp.frame, pattern.role)
            per_role.append((pattern, [None]))
        else:
            per_role.append((pattern, list(matches)))

    candidates = []
    for assignment in product(*(matches for _, matches in per_role)):
        fillers = []
        for (pattern, _), tid in zip(per_role, assignment):
            if tid is None:
                continue
            fillers.append((pattern.role, tid, parse.token(tid).lemma))
        candidates.append(CandidateParse(
            frame=lvp.frame, fillers=fillers,
            source_parse_id=parse.parse_id, lu_token_id=lu_token_id))
    return candidates


def train_store(annotations: list[TrainingAnnotation],
                parse_sets: list[ParseSet], lexicon=None) -> LvpStore:
    """Build a valence-pattern store from annotations plus the parses of
    their sentences (matched by sentence text)."""
    from .paraparse import paraparse

    by_text = {ps.sentence_text: ps for ps in parse_sets}
    store = LvpStore()
    for annotation in annotations:
        pset = by_text.get(annotation.sentence)
        if pset is None:
            raise TrainingError(
                f"no parse found for training sentence {annotation.sentence!r}")
        variants = paraparse(pset.best(), lexicon)
        for lvp in learn_lvp(annotation, variants[0]):
            store.add(lvp)
    return store
