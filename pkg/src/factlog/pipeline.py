"""End-to-end authoring: validated parse -> rewrites -> frames -> senses ->
logical facts.  The FactualAuthor estimator is the package's front door:
fit() learns valence patterns from annotated sentences, predict() authors
fact sets, following the fit/predict/get_params conventions so it slots
into estimator-style tooling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .correction import CorrectionOutcome, Fix, KBestTags, Reparser, correct
from .disambig import (DEFAULT_HOP_LIMIT, ScoredCandidate, SynsetGraph,
                       disambiguate_candidate)
from .factuality import Violation
from .frames import (LvpStore, ParseSet, Rejection, apply_lvp_all,
                     lu_occurrences, read_training_file, train_store,
                     trigger_lvps)
from .model import (AuthoringError, DependencyParse, FactlogError,
                    MixedCoordinationError)
from .paraparse import NormalizationConfig, RewriteTrace, paraparse
from .tokenfacts import export_token_facts
from .ulr import (UlrFact, build_ulr, clause_variants, segment_clauses,
                  serialize_ulr, shared_connective)


@dataclass
class AuthoringResult:
    sentence_id: int
    text: str
    status: str  # "ok" | "rejected" | "error"
    facts: list[UlrFact] = field(default_factory=list)
    connective: str = "and"
    violations: list[Violation] = field(default_factory=list)
    error: str | None = None
    token_facts: str = ""
    trace: RewriteTrace | None = None
    correction_status: str = "unchanged"
    applied_fixes: list[Fix] = field(default_factory=list)

    def serialized(self) -> str:
        lines = ""
        if self.connective == "or" and self.facts:
            lines += "connective(or).\n"
        return lines + serialize_ulr(self.facts)


def _score_clause(sub: DependencyParse, store: LvpStore,
                  graph: SynsetGraph, bindings, hop_limit, penalty,
                  ) -> tuple[ScoredCandidate | None, bool]:
    """Best-scored candidate for one clause choice.

    Returns (candidate, triggered): candidate is None when nothing
    triggered (no fact) or everything triggered got rejected."""
    scored: list[tuple[float, int, str, ScoredCandidate]] = []
    triggered_any = False
    for lvp in trigger_lvps(sub, store):
        for lu_id in lu_occurrences(sub, lvp):
            triggered_any = True
            outcome = apply_lvp_all(lvp, sub, lu_id)
            if isinstance(outcome, Rejection):
                continue
            for candidate in outcome:
                sc = disambiguate_candidate(candidate, bindings, graph,
                                            hop_limit, penalty)
                scored.append((sc.score, lu_id, lvp.frame, sc))
    if not scored:
        return None, triggered_any
    scored.sort(key=lambda item: (item[0], item[1], item[2]))
    return scored[0][3], triggered_any


def author_parse(parse: DependencyParse, store: LvpStore,
                 graph: SynsetGraph, bindings,
                 lexicon: NormalizationConfig | None = None,
                 hop_limit: int = DEFAULT_HOP_LIMIT,
                 infinite_penalty: float | None = None,
                 trace: RewriteTrace | None = None,
                 ) -> tuple[list[UlrFact], str]:
    """Author one accepted parse into facts; returns (facts, connective).

    Several rewrite variants (passive by-phrase choices) compete; the one
    with the cheapest total disambiguation cost wins."""
    variants = paraparse(parse, lexicon, trace)
    best: tuple[float, list, str] | None = None
    last_error: Exception | None = None
    for variant in variants:
        try:
            connective = shared_connective(variant.coord_groups)
            picks: list[ScoredCandidate | None] = []
            labels: list[str] = []
            total = 0.0
            for clause in segment_clauses(variant):
                for _sigma, sub in clause_variants(variant, clause):
                    candidate, triggered = _score_clause(
                        sub, store, graph, bindings, hop_limit,
                        infinite_penalty)
                    root_words = ", ".join(
                        variant.token(r).surface for r in clause.root_ids
                        if r in variant.tokens)
                    if candidate is None:
                        if triggered:
                            raise AuthoringError(
                                f"clause at [{root_words}] triggered frames "
                                f"but filled none of them")
                        continue  # nothing claimed for this clause
                    picks.append(candidate)
                    labels.append(f"clause at [{root_words}]")
                    total += candidate.score
            facts = build_ulr(picks, labels)
        except (AuthoringError, MixedCoordinationError) as exc:
            last_error = exc
            continue
        if best is None or total < best[0]:
            best = (total, facts, connective)
    if best is None:
        raise last_error if last_error else AuthoringError("no usable variant")
    return best[1], best[2]


def author_sentence(parse_set: ParseSet, store: LvpStore,
                    graph: SynsetGraph, bindings,
                    lexicon: NormalizationConfig | None = None,
                    kbest: KBestTags | None = None,
                    reparser: Reparser | None = None,
                    threshold: float = 0.9,
                    hop_limit: int = DEFAULT_HOP_LIMIT,
                    infinite_penalty: float | None = None,
                    ) -> AuthoringResult:
    """Validate (correcting if needed), rewrite, frame-parse, disambiguate
    and serialize one sentence."""
    sid = parse_set.sentence_id
    outcome: CorrectionOutcome = correct(parse_set, kbest, reparser, threshold)
    if outcome.status == "rephrase_required":
        return AuthoringResult(sid, parse_set.sentence_text, "rejected",
                               violations=outcome.violations,
                               correction_status=outcome.status,
                               applied_fixes=outcome.applied_fixes)
    accepted = outcome.selected
    token_facts = export_token_facts(accepted)
    trace = RewriteTrace()
    try:
        facts, connective = author_parse(
            accepted, store, graph, bindings, lexicon,
            hop_limit, infinite_penalty, trace)
    except (AuthoringError, MixedCoordinationError) as exc:
        return AuthoringResult(sid, parse_set.sentence_text, "error",
                               error=str(exc), token_facts=token_facts,
                               trace=trace,
                               correction_status=outcome.status,
                               applied_fixes=outcome.applied_fixes)
    return AuthoringResult(sid, parse_set.sentence_text, "ok", facts,
                           connective, token_facts=token_facts, trace=trace,
                           correction_status=outcome.status,
                           applied_fixes=outcome.applied_fixes)


class FactualAuthor:
    """Estimator-style facade over the authoring pipeline.

    Parameters mirror the pipeline configuration; fit() builds the valence
    pattern store, predict() maps ParseSets to AuthoringResults.
    """

    def __init__(self, threshold: float = 0.9,
                 hop_limit: int = DEFAULT_HOP_LIMIT,
                 infinite_penalty: float | None = None,
                 lexicon: NormalizationConfig | None = None):
        self.threshold = threshold
        self.hop_limit = hop_limit
        self.infinite_penalty = infinite_penalty
        self.lexicon = lexicon
        self.store_: LvpStore | None = None
        self.graph_: SynsetGraph | None = None
        self.bindings_: dict[tuple[str, str], str] | None = None

    # -- sklearn-style parameter plumbing -----------------------------------

    def get_params(self, deep: bool = True) -> dict:
        return {"threshold": self.threshold, "hop_limit": self.hop_limit,
                "infinite_penalty": self.infinite_penalty,
                "lexicon": self.lexicon}

    def set_params(self, **params) -> "FactualAuthor":
        for key, value in params.items():
            if key not in self.get_params():
                raise ValueError(f"unknown parameter {key!r}")
            setattr(self, key, value)
        return self

    # -- training ------------------------------------------------------------

    def fit(self, annotations, training_parses: list[ParseSet],
            graph: SynsetGraph | None = None,
            bindings: dict[tuple[str, str], str] | None = None,
            ) -> "FactualAuthor":
        """Learn valence patterns; annotations may be a training-file string
        or a list of TrainingAnnotation."""
        if isinstance(annotations, str):
            annotations = read_training_file(annotations)
        self.store_ = train_store(annotations, training_parses, self.lexicon)
        if graph is not None:
            self.graph_ = graph
        if bindings is not None:
            self.bindings_ = bindings
        return self

    def with_store(self, store: LvpStore) -> "FactualAuthor":
        self.store_ = store
        return self

    def with_senses(self, graph: SynsetGraph,
                    bindings: dict[tuple[str, str], str]) -> "FactualAuthor":
        self.graph_ = graph
        self.bindings_ = bindings
        return self

    # -- authoring -----------------------------------------------------------

    def _check_fitted(self):
        if self.store_ is None or self.graph_ is None or self.bindings_ is None:
            raise FactlogError(
                "FactualAuthor is not fitted: call fit()/with_senses() first")

    def predict_one(self, parse_set: ParseSet,
                    kbest: KBestTags | None = None,
                    reparser: Reparser | None = None) -> AuthoringResult:
        self._check_fitted()
        return author_sentence(
            parse_set, self.store_, self.graph_, self.bindings_,
            self.lexicon, kbest, reparser, self.threshold, self.hop_limit,
            self.infinite_penalty)

    def predict(self, parse_sets: list[ParseSet],
                reparser: Reparser | None = None) -> list[AuthoringResult]:
        return [self.predict_one(ps, reparser=reparser) for ps in parse_sets]
