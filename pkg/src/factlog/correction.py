"""Detection and repair of frequent POS-tagging errors.

Works from the top-2 tags per token: four UPOS substitution rules and three
XPOS substitution rules, each guarded by a sub-threshold confidence (the
guard is strict, so a confidence of exactly the threshold never fires).
After re-tagging, the sentence is re-parsed and the first re-parse that
satisfies all factual properties is selected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .factuality import Violation, check_factual
from .model import DependencyParse, FactlogError, ParseSet

DEFAULT_THRESHOLD = 0.9

# upos rule table: (top1, top2) -> (replacement upos, allowed xpos values)
_UPOS_RULES = {
    ("NOUN", "VERB"): ("VERB", ("VBP", "VBZ", "VBD")),
    ("VERB", "AUX"): ("AUX", ("VBP", "VBZ", "VBD")),
    ("PRON", "DET"): ("DET", ("WDT", "PDT", "DT")),
    ("SCONJ", "ADV"): ("ADV", ("WRB", "IN")),
}

# xpos rule table: (top1, top2) -> replacement xpos
_XPOS_RULES = {
    ("VBD", "VBN"): "VBN",
    ("VBN", "VBD"): "VBD",
    ("VBP", "VB"): "VB",
}


@dataclass
class TokenTags:
    """Ranked (tag, confidence) alternatives for one token."""

    upos: list[tuple[str, float]]
    xpos: list[tuple[str, float]]

    def __post_init__(self):
        for name, ranked in (("upos", self.upos), ("xpos", self.xpos)):
            if not ranked:
                raise FactlogError(f"{name} alternatives must be nonempty")
            confs = [c for _, c in ranked]
            if any(a < b for a, b in zip(confs, confs[1:])):
                raise FactlogError(
                    f"{name} confidences must be non-increasing: {confs}")


@dataclass
class KBestTags:
    """Per-token ranked tag lists, keyed by token id."""

    tags: dict[int, TokenTags]

    @classmethod
    def from_parse(cls, parse: DependencyParse) -> "KBestTags":
        """Top-1-only lists built from the tags the parse already carries."""
        return cls({tid: TokenTags(upos=[(tok.upos, tok.upos_conf)],
                                   xpos=[(tok.xpos, tok.xpos_conf)])
                    for tid, tok in parse.tokens.items()})


@dataclass
class Fix:
    token_id: int
    kind: str  # "upos" | "xpos"
    old: str
    new: str


@dataclass
class CorrectionOutcome:
    status: str  # unchanged | corrected | rephrase_required
    selected: DependencyParse | None
    applied_fixes: list[Fix] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)


def _best_xpos(allowed: tuple[str, ...], ranked: list[tuple[str, float]]) -> str:
    """Highest-confidence tag among the allowed set; tags absent from the
    ranked list count as confidence 0 and fall back to the listed order."""
    confs = {}
    for tag, conf in ranked:
        confs.setdefault(tag, conf)
    return max(allowed, key=lambda t: (confs.get(t, 0.0), -allowed.index(t)))


def correct_pos_tags(parse: DependencyParse, kbest: KBestTags,
                     threshold: float = DEFAULT_THRESHOLD,
                     ) -> tuple[dict[int, str], dict[int, str], list[Fix]]:
    """Apply the tag-substitution rules token by token.

    Returns (corrected upos map, corrected xpos map, fixes applied).  Only
    tags change; lemmas, surfaces and edges are untouched by construction.
    """
    upos_out: dict[int, str] = {}
    xpos_out: dict[int, str] = {}
    fixes: list[Fix] = []
    for tid in parse.token_ids():
        tok = parse.token(tid)
        tags = kbest.tags.get(tid)
        if tags is None:
            raise FactlogError(f"k-best tags missing for token {tid}")
        upos1, upos_conf = tags.upos[0]
        xpos1, xpos_conf = tags.xpos[0]
        upos2 = tags.upos[1][0] if len(tags.upos) > 1 else None
        xpos2 = tags.xpos[1][0] if len(tags.xpos) > 1 else None
        new_upos, new_xpos = upos1, xpos1

        if upos_conf < threshold:
            if (upos1, upos2) in _UPOS_RULES:
                new_upos, allowed = _UPOS_RULES[(upos1, upos2)]
                new_xpos = _best_xpos(allowed, tags.xpos)
        elif xpos_conf < threshold:
            if (xpos1, xpos2) in _XPOS_RULES:
                new_xpos = _XPOS_RULES[(xpos1, xpos2)]

        if new_upos != tok.upos:
            fixes.append(Fix(tid, "upos", tok.upos, new_upos))
        if new_xpos != tok.xpos:
            fixes.append(Fix(tid, "xpos", tok.xpos, new_xpos))
        upos_out[tid] = new_upos
        xpos_out[tid] = new_xpos
    return upos_out, xpos_out, fixes


def select_corrected_parse(reparses: ParseSet) -> CorrectionOutcome:
    """First parse (in confidence order) that passes all factual checks."""
    best_violations: list[Violation] | None = None
    for parse in reparses.parses:
        verdict, tagged = check_factual(parse)
        if verdict.accepted:
            return CorrectionOutcome("corrected", tagged)
        if best_violations is None:
            best_violations = verdict.violations
    return CorrectionOutcome("rephrase_required", None,
                             violations=best_violations or [])


Reparser = Callable[[str, list[tuple[str, str]]], ParseSet]


def correct(parse_set: ParseSet, kbest: KBestTags | None = None,
            reparser: Reparser | None = None,
            threshold: float = DEFAULT_THRESHOLD) -> CorrectionOutcome:
    """Full correction flow for one sentence.

    If the best parse is already factual it is returned unchanged and the
    reparser is never called.  Otherwise the tag rules run; if they fixed
    anything the sentence is re-parsed with the fixed tags, else the
    remaining ranked parses are scanned in their original order.
    """
    parse0 = parse_set.best()
    verdict, tagged = check_factual(parse0)
    if verdict.accepted:
        return CorrectionOutcome("unchanged", tagged)

    if kbest is None:
        kbest = KBestTags.from_parse(parse0)
    upos_map, xpos_map, fixes = correct_pos_tags(parse0, kbest, threshold)

    if fixes and reparser is not None:
        fixed = [(upos_map[tid], xpos_map[tid]) for tid in parse0.token_ids()]
        try:
            reparses = reparser(parse_set.sentence_text, fixed)
        except Exception as exc:
            raise FactlogError(
                f"re-parse failed for {parse_set.sentence_text!r}: {exc}"
            ) from exc
        outcome = select_corrected_parse(reparses)
        outcome.applied_fixes = fixes
        return outcome

    # no applicable rule (or no reparser): fall back to the remaining
    # original parses, best first
    if len(parse_set.parses) > 1:
        rest = ParseSet(parse_set.sentence_text, parse_set.parses[1:])
        outcome = select_corrected_parse(rest)
        if outcome.status == "corrected":
            return outcome
    return CorrectionOutcome("rephrase_required", None,
                             violations=verdict.violations)
