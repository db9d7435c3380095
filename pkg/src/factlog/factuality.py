"""Necessary grammatical conditions for a parse to express a recordable fact.

Six checks, each pure and independent; ``check_factual`` aggregates them and
returns a verdict plus a copy of the parse with every token tagged
accepted/rejected.  These are necessary conditions only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import NOMINAL_UPOS, DependencyParse, label_matches

MODAL_LEMMAS = {"can", "do", "may", "must", "ought", "should", "will"}
PASSIVE_AUX_LEMMAS = {"be", "get"}
CONNECTIVES = {"and", "or"}


@dataclass(frozen=True)
class Violation:
    property_id: int
    token_id: int
    detail: str

    def __str__(self):
        return f"P{self.property_id}@{self.token_id}: {self.detail}"


@dataclass
class Verdict:
    accepted: bool
    violations: list[Violation]


def check_main_clause(parse: DependencyParse) -> list[Violation]:
    """The root must be a verb with a subject, or a nominal/adjective with
    a subject and a copula."""
    root = parse.root_id()
    tok = parse.token(root)
    has_subj = bool(parse.dependents(root, "nsubj"))
    if tok.upos == "VERB":
        if has_subj:
            return []
        return [Violation(1, root, f"root verb '{tok.surface}' has no subject")]
    if tok.upos in NOMINAL_UPOS:
        if has_subj and parse.dependents(root, "cop"):
            return []
        return [Violation(1, root,
                          f"root '{tok.surface}' ({tok.upos}) needs both a "
                          f"subject and a copula")]
    return [Violation(1, root,
                      f"root '{tok.surface}' is {tok.upos}; expected a verb "
                      f"or a nominal with copula")]


def coordination_groups(parse: DependencyParse) -> list[list[int]]:
    """Conjunct closures: the head of the conj edges plus all its conjuncts,
    in position order."""
    groups = []
    for tid in parse.token_ids():
        if not parse.dependents_exact(tid, "conj"):
            continue
        head = parse.head_edge(tid)
        if head is not None and head.label == "conj":
            continue  # interior of a conj chain; covered by its own root
        members = [tid]
        frontier = [tid]
        while frontier:
            nxt = []
            for m in frontier:
                for e in parse.dependents_exact(m, "conj"):
                    if e.dep not in members:
                        members.append(e.dep)
                        nxt.append(e.dep)
            frontier = nxt
        groups.append(sorted(members))
    return groups


def check_coordination(parse: DependencyParse) -> list[Violation]:
    """The last conjunct of every coordination must carry cc -> and/or."""
    violations = []
    for members in coordination_groups(parse):
        last = members[-1]
        cc_edges = parse.dependents_exact(last, "cc")
        if not cc_edges:
            violations.append(Violation(
                2, last, "last conjunct has no connective"))
            continue
        lemma = parse.token(cc_edges[0].dep).lemma
        if lemma not in CONNECTIVES:
            violations.append(Violation(
                2, last, f"connective '{lemma}' is not and/or"))
    return violations


def _closest_aux(parse: DependencyParse, head: int, labels: tuple[str, ...]):
    """The auxiliary dependent nearest to head; ties go to the later token."""
    candidates = [e for e in parse.out_edges(head) if e.label in labels]
    if not candidates:
        return None
    return min(candidates, key=lambda e: (abs(e.dep - head), -e.dep))


def check_verb_with_aux(parse: DependencyParse) -> list[Violation]:
    """Verbs with auxiliaries must realize one of the four tense/voice
    shapes: be+VBG, have+VBN, modal/do+VB, or be|get via aux:pass + VBN."""
    violations = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        if tok.upos != "VERB":
            continue
        closest = _closest_aux(parse, tid, ("aux", "aux:pass"))
        if closest is None:
            continue
        lemma = parse.token(closest.dep).lemma
        ok = False
        if closest.label == "aux":
            ok = ((lemma == "be" and tok.xpos == "VBG")
                  or (lemma == "have" and tok.xpos == "VBN")
                  or (lemma in MODAL_LEMMAS and tok.xpos == "VB"))
        elif closest.label == "aux:pass":
            ok = lemma in PASSIVE_AUX_LEMMAS and tok.xpos == "VBN"
        if not ok:
            violations.append(Violation(
                3, tid,
                f"auxiliary '{lemma}' ({closest.label}) does not fit "
                f"'{tok.surface}'/{tok.xpos}"))
    return violations


def check_verb_without_aux(parse: DependencyParse) -> list[Violation]:
    """Bare verbs are licensed by coordination, adnominal attachment, or a
    main/relative clause with an explicit subject, depending on their form."""
    violations = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        if tok.upos != "VERB":
            continue
        if any(label_matches(e.label, "aux") for e in parse.out_edges(tid)):
            continue
        head = parse.head_edge(tid)
        in_label = head.label if head else ""
        in_conj = in_label == "conj"
        in_acl = label_matches(in_label, "acl")
        if tok.xpos in ("VBG", "VBN"):
            if not (in_conj or in_acl):
                violations.append(Violation(
                    4, tid,
                    f"participle '{tok.surface}' is neither conjoined nor "
                    f"adnominal"))
        elif tok.xpos in ("VBP", "VBZ", "VBD"):
            clausal = in_label == "root" or in_acl
            has_subj = bool(parse.dependents(tid, "nsubj"))
            if not (in_conj or (clausal and has_subj)):
                violations.append(Violation(
                    4, tid,
                    f"finite verb '{tok.surface}' lacks a licensed clause "
                    f"position or a subject"))
        elif tok.xpos == "VB":
            marks = parse.dependents_exact(tid, "mark")
            to_mark = any(parse.token(e.dep).lemma == "to" for e in marks)
            if not (in_conj or (in_acl and to_mark)):
                violations.append(Violation(
                    4, tid,
                    f"base-form verb '{tok.surface}' is neither conjoined "
                    f"nor an adnominal infinitive"))
    return violations


def check_nonverb_with_aux(parse: DependencyParse) -> list[Violation]:
    """Non-verbs with attached auxiliaries must be nominal/adjectival,
    subject-bearing, and linked to the closest auxiliary via cop."""
    violations = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        if tok.upos in ("VERB", "AUX"):
            continue
        closest = _closest_aux(parse, tid, ("aux", "aux:pass", "cop"))
        if closest is None:
            continue
        problems = []
        if tok.upos not in NOMINAL_UPOS:
            problems.append(f"{tok.upos} cannot head a copular clause")
        if closest.label != "cop":
            problems.append(
                f"closest auxiliary attaches as {closest.label}, not cop")
        if not parse.dependents(tid, "nsubj"):
            problems.append("no subject")
        if problems:
            violations.append(Violation(5, tid, "; ".join(problems)))
    return violations


def check_projective(parse: DependencyParse) -> list[Violation]:
    """No crossing arcs: every subtree (root arc included) must cover a
    contiguous run of the remaining token positions."""
    positions = parse.token_ids()
    children: dict[int, list[int]] = {tid: [] for tid in positions}
    for e in parse.edges:
        if e.head in children:
            children[e.head].append(e.dep)

    subtree: dict[int, set[int]] = {}

    def collect(tid: int) -> set[int]:
        if tid in subtree:
            return subtree[tid]
        acc = {tid}
        for child in children[tid]:
            acc |= collect(child)
        subtree[tid] = acc
        return acc

    violations = []
    for tid in positions:
        span = collect(tid)
        lo, hi = min(span), max(span)
        gap = [p for p in positions if lo < p < hi and p not in span]
        if gap:
            violations.append(Violation(
                6, tid,
                f"subtree of token {tid} skips positions {gap}"))
    return violations


ALL_CHECKS = (
    check_main_clause,
    check_coordination,
    check_verb_with_aux,
    check_verb_without_aux,
    check_nonverb_with_aux,
    check_projective,
)


def check_factual(parse: DependencyParse) -> tuple[Verdict, DependencyParse]:
    """Run all six checks.  Returns the verdict and a tagged copy; the input
    parse is left untouched."""
    violations: list[Violation] = []
    for check in ALL_CHECKS:
        violations.extend(check(parse))
    tagged = parse.copy()
    tagged.set_validation("accepted" if not violations else "rejected")
    return Verdict(accepted=not violations, violations=violations), tagged
