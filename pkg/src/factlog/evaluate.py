"""Sentence-level scoring of authored facts against gold facts.

Three levels of increasing strictness: a sentence is frame-correct when it
triggers exactly the gold frames (none missing, none spurious),
role-correct when additionally every role filler matches, synset-correct
when the senses match too.  Scores are the correct-sentence ratios.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import FactlogError
from .ulr import UlrFact, canonical_facts, parse_ulr_text


@dataclass
class SentenceVerdict:
    sentence_id: int
    frame_ok: bool
    role_ok: bool
    synset_ok: bool


@dataclass
class EvalReport:
    frame_f1: float
    role_f1: float
    synset_f1: float
    per_sentence: list[SentenceVerdict]

    def to_json(self) -> dict:
        return {
            "frame_f1": self.frame_f1,
            "role_f1": self.role_f1,
            "synset_f1": self.synset_f1,
            "sentences": [
                {"id": v.sentence_id, "frame": v.frame_ok, "role": v.role_ok,
                 "synset": v.synset_ok}
                for v in self.per_sentence],
        }


def _level_key(facts: list[UlrFact], level: str) -> Counter:
    return Counter(canonical_facts(facts, level))


def evaluate(system: dict[int, list[UlrFact]],
             gold: dict[int, list[UlrFact]]) -> EvalReport:
    """Compare fact sets aligned by sentence id."""
    if set(system) != set(gold):
        missing = sorted(set(gold) - set(system))
        extra = sorted(set(system) - set(gold))
        raise FactlogError(
            f"sentence ids are misaligned (missing={missing}, extra={extra})")
    verdicts = []
    for sid in sorted(system):
        sys_facts, gold_facts = system[sid], gold[sid]
        frame_ok = _level_key(sys_facts, "frame") == _level_key(gold_facts, "frame")
        role_ok = frame_ok and (
            _level_key(sys_facts, "role") == _level_key(gold_facts, "role"))
        synset_ok = role_ok and (
            _level_key(sys_facts, "synset") == _level_key(gold_facts, "synset"))
        verdicts.append(SentenceVerdict(sid, frame_ok, role_ok, synset_ok))
    n = len(verdicts) or 1
    return EvalReport(
        frame_f1=sum(v.frame_ok for v in verdicts) / n,
        role_f1=sum(v.role_ok for v in verdicts) / n,
        synset_f1=sum(v.synset_ok for v in verdicts) / n,
        per_sentence=verdicts,
    )


def read_ulr_document(text: str) -> dict[int, list[UlrFact]]:
    """Split a batch fact file into per-sentence fact lists.

    Sentences are delimited by ``% sentence <id> ...`` comment lines; the
    facts of each block renumber from fid_1.
    """
    blocks: dict[int, list[str]] = {}
    current: int | None = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("% sentence"):
            fields = stripped.split()
            try:
                current = int(fields[2])
            except (IndexError, ValueError):
                raise FactlogError(f"bad sentence delimiter {stripped!r}")
            blocks.setdefault(current, [])
        elif stripped and not stripped.startswith("%"):
            if current is None:
                raise FactlogError(
                    "fact line before any '% sentence' delimiter")
            blocks[current].append(stripped)
    return {sid: parse_ulr_text("\n".join(lines))[0]
            for sid, lines in blocks.items()}


def evaluate_documents(system_text: str, gold_text: str) -> EvalReport:
    return evaluate(read_ulr_document(system_text),
                    read_ulr_document(gold_text))
