import random

import networkx as nx
from _corpus import random_graphs

from symgraph import generators
from symgraph.oracles import (
    ExplicitGraph,
    bfs_all_pairs_diameter,
    explicit_objective,
    is_strongly_connected,
    kosaraju_scc,
    tarjan_scc,
)
from symgraph.reductions import DisjointnessInstance, gen_buchi_loops, gen_diameter_gadget, gen_scc_layered


def eg_of(G):
    return ExplicitGraph.from_graph(G)


def test_small_scc_examples():
    assert tarjan_scc(eg_of(generators.cycle(3))) == [frozenset({0, 1, 2})]
    assert len(tarjan_scc(eg_of(generators.edgeless(3)))) == 3
    G, _ = gen_scc_layered(DisjointnessInstance.from_sets(4, {2, 3}, {0, 1, 3}), 2)
    assert len(tarjan_scc(eg_of(G))) == 3


def test_dual_oracle_agreement():
    for i in range(1000):
        rng = random.Random(i)
        n = rng.randint(1, 40)
        G = generators.random_digraph(n, rng.choice([0.5 / n, 1.5 / n, 0.1, 0.3]), i)
        eg = eg_of(G)
        assert set(tarjan_scc(eg)) == set(kosaraju_scc(eg))


def test_against_networkx():
    for G in random_graphs(60, 60, seed0=77):
        eg = eg_of(G)
        ng = nx.DiGraph()
        ng.add_nodes_from(range(G.n))
        ng.add_edges_from(G.edges())
        assert set(tarjan_scc(eg)) == {frozenset(c) for c in nx.strongly_connected_components(ng)}
        D, _ = bfs_all_pairs_diameter(eg)
        lengths = dict(nx.all_pairs_shortest_path_length(ng))
        assert D == max(max(d.values()) for d in lengths.values())


def test_diameter_examples():
    assert bfs_all_pairs_diameter(eg_of(generators.path(4)))[0] == 3
    assert bfs_all_pairs_diameter(eg_of(generators.cycle(4)))[0] == 3
    G, _ = gen_diameter_gadget(DisjointnessInstance.from_sets(9, {2, 4, 8}, {1, 3, 5}))
    assert bfs_all_pairs_diameter(eg_of(G))[0] == 2
    _, per = bfs_all_pairs_diameter(eg_of(generators.path(3)))
    assert set(per.values()) == {0}


def test_objective_examples():
    eg = eg_of(generators.cycle(3))
    assert explicit_objective(eg, "reach", {2}) == {0, 1, 2}
    assert explicit_objective(eg_of(generators.edgeless(4)), "safe", range(4)) == frozenset()
    G, _ = gen_buchi_loops(DisjointnessInstance.from_sets(4, {2, 3}, {0, 1, 3}))
    assert explicit_objective(eg_of(G), "buchi", range(4)) == {0, 1, 2, 3}


def test_objective_monotone_and_safe_in_cobuchi():
    for i, G in enumerate(random_graphs(60, 30, seed0=200)):
        rng = random.Random(i)
        T = {v for v in range(G.n) if rng.random() < 0.4}
        bigger = T | {v for v in range(G.n) if rng.random() < 0.3}
        eg = eg_of(G)
        for kind in ("reach", "safe", "buchi", "cobuchi"):
            assert explicit_objective(eg, kind, T) <= explicit_objective(eg, kind, bigger)
        assert explicit_objective(eg, "safe", T) <= explicit_objective(eg, "cobuchi", T)


def test_strong_connectivity():
    assert is_strongly_connected(eg_of(generators.cycle(5)))
    assert not is_strongly_connected(eg_of(generators.path(2)))
