import math
import random

import pytest

from factlog.disambig import (RoleSynsetBinding, SynsetGraph,
                              default_infinite_penalty, disambiguate,
                              disambiguate_candidate, hop_bounded_costs,
                              load_synset_graph)
from factlog.frames import CandidateParse
from factlog.model import DisambiguationError, FactlogError

from helpers import hop_dp_costs_oracle


def test_watch_resolves_to_timepiece(graph):
    binding = RoleSynsetBinding("Commerce_buy", "Goods", "bn:00021045n")
    choice = disambiguate(binding, "watch", graph)
    assert choice.synset == "bn:00077172n"
    assert not choice.unreachable


def test_single_synset_lemma_returned_regardless_of_cost(graph):
    binding = RoleSynsetBinding("Commerce_buy", "Goods", "bn:00021045n")
    choice = disambiguate(binding, "country", graph)
    assert choice.synset == "bn:00023236n"


def test_disconnected_candidates_fall_back_to_first_listed():
    graph = SynsetGraph(
        glosses={"bn:1": "role", "bn:2": "sense a", "bn:3": "sense b"},
        lemma_index={"word": ["bn:2", "bn:3"]},
        adjacency={"bn:1": [], "bn:2": [], "bn:3": []})
    binding = RoleSynsetBinding("F", "R", "bn:1")
    choice = disambiguate(binding, "word", graph)
    assert choice.synset == "bn:2"
    assert choice.unreachable and math.isinf(choice.cost)


def test_unknown_lemma_raises(graph):
    binding = RoleSynsetBinding("Commerce_buy", "Goods", "bn:00021045n")
    with pytest.raises(DisambiguationError):
        disambiguate(binding, "zzznonesuch", graph)


def test_tie_breaks_to_smallest_synset_id():
    graph = SynsetGraph(
        glosses={"bn:0": "role", "bn:b": "late", "bn:a": "early"},
        lemma_index={"word": ["bn:b", "bn:a"]},
        adjacency={"bn:0": [("bn:b", "rel", 1.0), ("bn:a", "rel", 1.0)],
                   "bn:b": [], "bn:a": []})
    choice = disambiguate(RoleSynsetBinding("F", "R", "bn:0"), "word", graph)
    assert choice.synset == "bn:a"
    assert choice.cost == 1.0


def random_graph(rng: random.Random):
    n = rng.randint(5, 200)
    nodes = [f"bn:{i:08d}n" for i in range(n)]
    adjacency = {node: [] for node in nodes}
    for _ in range(rng.randint(n, 3 * n)):
        a, b = rng.sample(nodes, 2)
        adjacency[a].append((b, "rel", round(rng.uniform(0.5, 3.0), 2)))
    graph = SynsetGraph(glosses={node: "gloss" for node in nodes},
                        lemma_index={}, adjacency=adjacency)
    return graph, nodes


def test_costs_match_dp_oracle_on_random_graphs():
    rng = random.Random(2024)
    for _ in range(100):
        graph, nodes = random_graph(rng)
        source = rng.choice(nodes)
        hop_limit = rng.randint(1, 6)
        mine = hop_bounded_costs(graph, source, hop_limit)
        oracle = hop_dp_costs_oracle(graph.adjacency, source, hop_limit)
        assert mine == oracle


def test_disambiguation_matches_oracle_choice():
    rng = random.Random(77)
    for _ in range(100):
        graph, nodes = random_graph(rng)
        candidates = rng.sample(nodes, rng.randint(1, 4))
        graph.lemma_index["word"] = candidates
        source = rng.choice(nodes)
        hop_limit = rng.randint(1, 6)
        choice = disambiguate(RoleSynsetBinding("F", "R", source), "word",
                              graph, hop_limit)
        oracle_costs = hop_dp_costs_oracle(graph.adjacency, source, hop_limit)
        reachable = [(oracle_costs[c], c) for c in candidates
                     if c in oracle_costs]
        if reachable:
            expected_cost, expected = min(reachable)
            assert (choice.synset, choice.cost) == (expected, expected_cost)
        else:
            assert choice.unreachable and choice.synset == candidates[0]


def test_raising_hop_limit_never_increases_cost(graph):
    binding = RoleSynsetBinding("Commerce_buy", "Goods", "bn:00021045n")
    previous = math.inf
    for hop_limit in range(1, 9):
        choice = disambiguate(binding, "watch", graph, hop_limit)
        cost = math.inf if choice.unreachable else choice.cost
        assert cost <= previous
        previous = cost


def test_candidate_scoring_sums_finite_costs(graph, bindings):
    rng = random.Random(31)
    lemmas = ["car", "watch", "house", "country", "usa", "movie", "mary",
              "john", "customer"]
    frames = {
        "Commerce_buy": ["Buyer", "Goods", "Recipient"],
        "Commerce_sell": ["Seller", "Goods"],
        "Manufacturing": ["Product", "Place"],
        "Residence": ["Resident", "Location"],
    }
    penalty = default_infinite_penalty(graph)
    for _ in range(20):
        frame = rng.choice(sorted(frames))
        roles = frames[frame]
        chosen = rng.sample(roles, rng.randint(1, len(roles)))
        fillers = [(role, i + 1, rng.choice(lemmas))
                   for i, role in enumerate(chosen)]
        candidate = CandidateParse(frame, fillers, 1, 1)
        scored = disambiguate_candidate(candidate, bindings, graph)
        expected = 0.0
        for role, _, lemma in fillers:
            oracle_costs = hop_dp_costs_oracle(
                graph.adjacency, bindings[(frame, role)], 5)
            costs = [(oracle_costs[c], c) for c in graph.lemma_index[lemma]
                     if c in oracle_costs]
            expected += min(costs)[0] if costs else penalty
        assert scored.score == pytest.approx(expected)


def test_zero_filler_candidate_scores_zero(graph, bindings):
    candidate = CandidateParse("Commerce_buy", [], 1, 1)
    assert disambiguate_candidate(candidate, bindings, graph).score == 0.0


def test_missing_binding_is_an_error(graph):
    candidate = CandidateParse("Nonesuch", [("R", 1, "car")], 1, 1)
    with pytest.raises(FactlogError, match="binding"):
        disambiguate_candidate(candidate, {}, graph)


def test_loader_validates_references(tmp_path):
    bad = tmp_path / "graph.txt"
    bad.write_text("node bn:1 a gloss\nedge bn:1 bn:2 rel 1.0\n")
    with pytest.raises(FactlogError, match="unknown synset"):
        load_synset_graph(bad)
    bad.write_text("node bn:1 a gloss\nlemma word bn:9\n")
    with pytest.raises(FactlogError, match="unknown synset"):
        load_synset_graph(bad)
    bad.write_text("node bn:1 a gloss\nnode bn:2 b\nedge bn:1 bn:2 rel -1\n")
    with pytest.raises(FactlogError, match="positive"):
        load_synset_graph(bad)


def test_fixture_graph_covers_cited_synsets(graph):
    for synset in ("bn:00046516n", "bn:00019763n", "bn:00077172n",
                   "bn:00080550n", "bn:00007309n", "bn:00023236n",
                   "bn:00021045n"):
        assert synset in graph.glosses


def test_example_candidate_gets_cited_synsets(graph, bindings):
    candidate = CandidateParse(
        "Commerce_buy", [("Buyer", 2, "customer"), ("Goods", 5, "watch")], 1, 3)
    scored = disambiguate_candidate(candidate, bindings, graph)
    chosen = {f.role: f.synset for f in scored.fillers}
    assert chosen == {"Buyer": "bn:00019763n", "Goods": "bn:00077172n"}
    assert all(not f.unreachable for f in scored.fillers)
