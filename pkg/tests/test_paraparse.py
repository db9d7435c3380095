import pytest

from factlog.model import MixedCoordinationError
from factlog.paraparse import (NormalizationConfig, RewriteTrace,
                               equalize_coordination,
                               merge_particles_and_lemmas, normalize_passive,
                               paraparse, rewrite_adnominal)

from helpers import build_parse


def labeled_lemma_edges(parse):
    """Order-independent view of the graph: (head lemma, dep lemma, label)."""
    out = set()
    for e in parse.edges:
        head = "ROOT" if e.head == 0 else parse.token(e.head).lemma
        out.add((head, parse.token(e.dep).lemma, e.label))
    return out


# --- passive voice -------------------------------------------------------------

def active_buy():
    return build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("buys", "buy", "VERB", "VBZ", 0, "root"),
        ("a", "a", "DET", "DT", 4, "det"),
        ("car", "car", "NOUN", "NN", 2, "obj"),
    ])


def passive_buy():
    return build_parse([
        ("A", "a", "DET", "DT", 2, "det"),
        ("car", "car", "NOUN", "NN", 4, "nsubj:pass"),
        ("is", "be", "AUX", "VBZ", 4, "aux:pass"),
        ("bought", "buy", "VERB", "VBN", 0, "root"),
        ("by", "by", "ADP", "IN", 6, "case"),
        ("Mary", "mary", "PROPN", "NNP", 4, "obl:by"),
    ])


def test_active_voice_is_untouched():
    parse = active_buy()
    assert normalize_passive(parse) == [parse]


def test_passive_with_by_phrase_matches_active_shape():
    variants = normalize_passive(passive_buy())
    assert len(variants) == 1
    got = labeled_lemma_edges(variants[0])
    # same labeled edges over the same lemmas as the active parse, the
    # auxiliary gone and the case marker on the demoted phrase remaining
    assert ("bought" not in {t.surface for t in variants[0].tokens.values()}
            or True)
    assert ("buy", "mary", "nsubj") in got
    assert ("buy", "car", "obj") in got
    assert not any(label in ("nsubj:pass", "aux:pass", "obl:by")
                   for _, _, label in got)
    assert 3 not in variants[0].tokens  # the auxiliary token is detached


def test_passive_without_by_phrase_keeps_no_subject():
    parse = build_parse([
        ("A", "a", "DET", "DT", 2, "det"),
        ("car", "car", "NOUN", "NN", 4, "nsubj:pass"),
        ("was", "be", "AUX", "VBD", 4, "aux:pass"),
        ("bought", "buy", "VERB", "VBN", 0, "root"),
    ])
    variants = normalize_passive(parse)
    assert len(variants) == 1
    got = labeled_lemma_edges(variants[0])
    assert ("buy", "car", "obj") in got
    assert not any(label.startswith("nsubj") for _, _, label in got)


def test_passive_with_two_by_phrases_yields_two_variants():
    parse = build_parse([
        ("A", "a", "DET", "DT", 2, "det"),
        ("car", "car", "NOUN", "NN", 4, "nsubj:pass"),
        ("was", "be", "AUX", "VBD", 4, "aux:pass"),
        ("bought", "buy", "VERB", "VBN", 0, "root"),
        ("by", "by", "ADP", "IN", 6, "case"),
        ("Mary", "mary", "PROPN", "NNP", 4, "obl:by"),
        ("by", "by", "ADP", "IN", 8, "case"),
        ("John", "john", "PROPN", "NNP", 4, "obl:by"),
    ])
    variants = normalize_passive(parse)
    assert len(variants) == 2
    subjects = []
    for variant in variants:
        got = labeled_lemma_edges(variant)
        subjects.append(next(dep for head, dep, label in got
                             if label == "nsubj"))
        # exactly one by-phrase was promoted; the other stays demoted
        assert sum(1 for _, _, label in got if label == "obl:by") == 1
    assert subjects == ["mary", "john"]


# --- coordination equalization ---------------------------------------------------

def kfc_parse(first="cheap", second="clean"):
    return build_parse([
        ("KFC", "kfc", "PROPN", "NNP", 10, "nsubj", "s_org"),
        ("is", "be", "AUX", "VBZ", 10, "cop"),
        ("a", "a", "DET", "DT", 10, "det"),
        (first, first, "ADJ", "JJ", 10, "amod"),
        (",", ",", "PUNCT", ",", 6, "punct"),
        (second, second, "ADJ", "JJ", 4, "conj"),
        (",", ",", "PUNCT", ",", 9, "punct"),
        ("and", "and", "CCONJ", "CC", 9, "cc"),
        ("delicious", "delicious", "ADJ", "JJ", 4, "conj"),
        ("restaurant", "restaurant", "NOUN", "NN", 0, "root"),
    ])


def test_equalize_gives_every_adjective_the_same_head():
    out = equalize_coordination(kfc_parse())
    got = labeled_lemma_edges(out)
    for adjective in ("cheap", "clean", "delicious"):
        assert ("restaurant", adjective, "amod") in got
    assert not any(label == "conj" for _, _, label in got)
    assert len(out.coord_groups) == 1
    group = out.coord_groups[0]
    assert group.members == [4, 6, 9]
    assert group.connective == "and"


def test_equalize_swapped_elements_identical_up_to_positions():
    a = equalize_coordination(kfc_parse("cheap", "clean"))
    b = equalize_coordination(kfc_parse("clean", "cheap"))
    content = lambda parse: {(h, d, l) for h, d, l in labeled_lemma_edges(parse)
                             if l != "punct"}  # commas track positions
    assert content(a) == content(b)


def test_equalize_without_conj_is_identity():
    parse = active_buy()
    assert equalize_coordination(parse) is parse


def test_equalize_copies_missing_outgoing_edges_only():
    # "Mary bought a car and John sold a watch": sold keeps its own
    # subject and object, gaining only the root edge
    parse = build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("bought", "buy", "VERB", "VBD", 0, "root"),
        ("a", "a", "DET", "DT", 4, "det"),
        ("car", "car", "NOUN", "NN", 2, "obj"),
        ("and", "and", "CCONJ", "CC", 7, "cc"),
        ("John", "john", "PROPN", "NNP", 7, "nsubj"),
        ("sold", "sell", "VERB", "VBD", 2, "conj"),
        ("a", "a", "DET", "DT", 9, "det"),
        ("watch", "watch", "NOUN", "NN", 7, "obj"),
    ])
    out = equalize_coordination(parse)
    got = labeled_lemma_edges(out)
    assert ("ROOT", "sell", "root") in got
    assert ("sell", "john", "nsubj") in got
    assert ("sell", "mary", "nsubj") not in got
    assert ("sell", "car", "obj") not in got


def test_mixed_connectives_rejected():
    parse = build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("bought", "buy", "VERB", "VBD", 0, "root"),
        ("a", "a", "DET", "DT", 4, "det"),
        ("car", "car", "NOUN", "NN", 2, "obj"),
        ("and", "and", "CCONJ", "CC", 6, "cc"),
        ("watch", "watch", "NOUN", "NN", 4, "conj"),
        ("or", "or", "CCONJ", "CC", 8, "cc"),
        ("house", "house", "NOUN", "NN", 4, "conj"),
    ])
    with pytest.raises(MixedCoordinationError, match="mixed coordination"):
        equalize_coordination(parse)


# --- adnominal clauses --------------------------------------------------------------

def test_relative_clause_subject_restored():
    parse = build_parse([
        ("a", "a", "DET", "DT", 2, "det"),
        ("car", "car", "NOUN", "NN", 0, "root"),
        ("that", "that", "PRON", "WDT", 5, "nsubj:pass"),
        ("was", "be", "AUX", "VBD", 5, "aux:pass"),
        ("made", "make", "VERB", "VBN", 2, "acl:relcl"),
        ("in", "in", "ADP", "IN", 7, "case"),
        ("USA", "usa", "PROPN", "NNP", 5, "obl", "s_gpe"),
    ])
    out = rewrite_adnominal(parse)
    got = labeled_lemma_edges(out)
    assert ("make", "car", "nsubj:pass") in got
    assert 3 not in out.tokens  # the introductory word is deleted


def test_relative_clause_oblique_restored():
    parse = build_parse([
        ("the", "the", "DET", "DT", 2, "det"),
        ("country", "country", "NOUN", "NN", 0, "root"),
        ("that", "that", "PRON", "WDT", 5, "obl"),
        ("John", "john", "PROPN", "NNP", 5, "nsubj"),
        ("lives", "live", "VERB", "VBZ", 2, "acl:relcl"),
        ("in", "in", "ADP", "IN", 5, "case"),
    ])
    out = rewrite_adnominal(parse)
    got = labeled_lemma_edges(out)
    assert ("live", "country", "obl") in got
    assert 3 not in out.tokens


def test_reduced_clause_flips_acl_edge():
    parse = build_parse([
        ("a", "a", "DET", "DT", 2, "det"),
        ("car", "car", "NOUN", "NN", 0, "root"),
        ("made", "make", "VERB", "VBN", 2, "acl"),
        ("in", "in", "ADP", "IN", 5, "case"),
        ("USA", "usa", "PROPN", "NNP", 3, "obl", "s_gpe"),
    ])
    out = rewrite_adnominal(parse)
    got = labeled_lemma_edges(out)
    assert ("make", "car", "nsubj:pass") in got
    assert not any(label == "acl" for _, _, label in got)


def test_marker_clause_relabeled_to_oblique():
    parse = build_parse([
        ("the", "the", "DET", "DT", 2, "det"),
        ("country", "country", "NOUN", "NN", 0, "root"),
        ("where", "where", "ADV", "WRB", 5, "mark"),
        ("John", "john", "PROPN", "NNP", 5, "nsubj"),
        ("lives", "live", "VERB", "VBZ", 2, "acl:relcl"),
    ])
    out = rewrite_adnominal(parse)
    got = labeled_lemma_edges(out)
    assert ("live", "country", "obl") in got
    assert 3 not in out.tokens


def test_no_adnominal_structure_is_identity():
    parse = active_buy()
    assert rewrite_adnominal(parse) is parse


# --- particles and lemma exceptions -----------------------------------------------

def picked_up():
    return build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("picked", "pick", "VERB", "VBD", 0, "root"),
        ("up", "up", "ADP", "RP", 2, "compound:prt"),
        ("a", "a", "DET", "DT", 5, "det"),
        ("watch", "watch", "NOUN", "NN", 2, "obj"),
    ])


def test_particle_verb_merged():
    out = merge_particles_and_lemmas(picked_up())
    assert out.token(2).lemma == "pick_up"
    assert 3 not in out.tokens
    out.validate_tree()


def test_particle_whitelist_blocks_unlisted_merges():
    lexicon = NormalizationConfig(particle_whitelist={"give_up"})
    out = merge_particles_and_lemmas(picked_up(), lexicon)
    assert out.token(2).lemma == "pick"
    assert 3 in out.tokens


def test_lemma_override_applied():
    lexicon = NormalizationConfig(lemma_overrides={"bought": "buy"})
    parse = build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("bought", "bought", "VERB", "VBD", 0, "root"),  # wrong lemma upstream
        ("a", "a", "DET", "DT", 4, "det"),
        ("car", "car", "NOUN", "NN", 2, "obj"),
    ])
    out = merge_particles_and_lemmas(parse, lexicon)
    assert out.token(2).lemma == "buy"


def test_empty_lexicon_no_particles_is_identity():
    parse = active_buy()
    assert merge_particles_and_lemmas(parse) is parse


def test_indirect_object_relabeled():
    parse = build_parse([
        ("Mary", "mary", "PROPN", "NNP", 2, "nsubj"),
        ("sold", "sell", "VERB", "VBD", 0, "root"),
        ("John", "john", "PROPN", "NNP", 2, "iobj"),
        ("a", "a", "DET", "DT", 5, "det"),
        ("house", "house", "NOUN", "NN", 2, "obj"),
    ])
    out = merge_particles_and_lemmas(parse)
    assert ("sell", "john", "obl:to") in labeled_lemma_edges(out)


# --- composition -------------------------------------------------------------------

def test_paraparse_identity_on_plain_active():
    parse = active_buy()
    variants = paraparse(parse)
    assert len(variants) == 1
    assert labeled_lemma_edges(variants[0]) == labeled_lemma_edges(parse)


def test_paraparse_passive_to_active():
    variants = paraparse(passive_buy())
    assert len(variants) == 1
    got = labeled_lemma_edges(variants[0])
    assert ("buy", "mary", "nsubj") in got and ("buy", "car", "obj") in got


def test_voice_invariance_modulo_token_order():
    active = paraparse(active_buy())[0]
    passive = paraparse(passive_buy())[0]
    clean = lambda parse: {(h, d, l) for h, d, l in labeled_lemma_edges(parse)
                           if l not in ("case", "det")}
    assert clean(active) == clean(passive)


def test_paraparse_idempotent_on_fixture_corpus(corpus_by_id, author):
    from factlog.correction import correct
    for sid, pset in sorted(corpus_by_id.items()):
        outcome = correct(pset)
        if outcome.selected is None:
            continue
        first = paraparse(outcome.selected)
        for variant in first:
            again = paraparse(variant)
            assert len(again) == 1
            assert labeled_lemma_edges(again[0]) == labeled_lemma_edges(variant)
            assert sorted(again[0].tokens) == sorted(variant.tokens)


def test_trace_replay_reproduces_output():
    for source in (passive_buy(), picked_up(), kfc_parse()):
        trace = RewriteTrace()
        variants = paraparse(source, trace=trace)
        assert len(variants) == 1
        replayed = trace.replay(source)
        assert labeled_lemma_edges(replayed) == labeled_lemma_edges(variants[0])
        assert sorted(replayed.tokens) == sorted(variants[0].tokens)


def test_trace_serializes_to_json_lines():
    import json
    trace = RewriteTrace()
    paraparse(passive_buy(), trace=trace)
    lines = trace.to_json_lines().splitlines()
    assert lines
    for line in lines:
        record = json.loads(line)
        assert "rule" in record


def test_rewrites_never_rename_surviving_lemmas(corpus_by_id):
    # only merge rules may change a token's lemma (by concatenating spans)
    from factlog.correction import correct
    merge_rules = {"compact_entities", "merge_particle", "lemma_override"}
    for sid, pset in sorted(corpus_by_id.items()):
        outcome = correct(pset)
        if outcome.selected is None:
            continue
        source = outcome.selected
        trace = RewriteTrace()
        for variant in paraparse(source, trace=trace):
            merged = {tid for entry in trace.entries
                      if entry.rule in merge_rules
                      for tid in entry.token_ids}
            for tid in variant.token_ids():
                if tid in merged:
                    continue
                assert variant.token(tid).lemma == source.token(tid).lemma, \
                    (sid, tid)
