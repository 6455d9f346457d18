import math
from fractions import Fraction

import pytest
from _corpus import random_graphs, strongly_connected_graphs

from symgraph import generators
from symgraph.core import OpCounter, VertexSet
from symgraph.diameter import (
    NotStronglyConnectedError,
    diameter_2approx,
    diameter_approx,
    diameter_approx_with_x,
    diameter_exact,
    dominating_set_size_bound,
    greedy_dominating_set,
    harmonic,
    neighborhood,
    x_for_eps,
)
from symgraph.oracles import ExplicitGraph, bfs_all_pairs_diameter, bfs_distances, eccentricity
from symgraph.reductions import DisjointnessInstance, gadget_layout, gen_diameter_gadget

DISJ9 = DisjointnessInstance.from_sets(9, {2, 4, 8}, {1, 3, 5})


def test_exact_examples():
    assert diameter_exact(generators.path(4)).value == 3
    assert diameter_exact(generators.edgeless(4)).value == 0
    G, _ = gen_diameter_gadget(DISJ9)
    assert diameter_exact(G).value == 2


def test_two_approx_examples():
    assert diameter_2approx(generators.cycle(4)).value == 3
    assert diameter_2approx(generators.Graph(1, [(0, 0)])).value == 0
    assert diameter_2approx(generators.complete(5)).value == 1
    with pytest.raises(NotStronglyConnectedError, match="requires strong connectivity"):
        diameter_2approx(generators.path(3))


def test_neighborhood_examples():
    G = generators.path(4)
    assert neighborhood(G, 2, 0).to_list() == [2]
    assert neighborhood(G, 0, 2, "out").to_list() == [0, 1, 2]
    assert neighborhood(G, 3, 2, "in").to_list() == [1, 2, 3]
    H, _ = gen_diameter_gadget(DISJ9)
    u, t, A, B, _ = gadget_layout(3)
    assert neighborhood(H, u, 1).to_list() == sorted([u, t] + A + B)


def test_neighborhood_cost():
    G = generators.path(6)
    for x in range(8):
        ctr = OpCounter()
        neighborhood(G, 0, x, ctr=ctr)
        assert ctr.one_step == min(x, 5 + 1)


def test_dominating_set_examples():
    assert greedy_dominating_set(generators.complete(5), 1).S.to_list() == [0]
    dom = greedy_dominating_set(generators.edgeless(4), 2)
    assert not dom.S and not dom.covered_target
    C16 = generators.cycle(16)
    dom = greedy_dominating_set(C16, 4)
    assert len(dom.S) <= 8 * harmonic(16)
    eg = ExplicitGraph.from_graph(C16)
    for v in range(16):
        ball = {w for w, d in bfs_distances(eg, v).items() if d <= 4}
        assert ball & set(dom.S)


def test_dominating_set_coverage_random():
    for G in random_graphs(40, 60, seed0=600):
        eg = ExplicitGraph.from_graph(G)
        for x in (1, 2, 3):
            dom = greedy_dominating_set(G, x)
            assert len(dom.S) <= dominating_set_size_bound(G.n, x)
            for v in range(G.n):
                ball = {w for w, d in bfs_distances(eg, v).items() if d <= x}
                assert (v in dom.covered_target) == (len(ball) >= x)
                if len(ball) >= x:
                    assert ball & set(dom.S)


def test_approx_with_x_examples():
    assert 6 <= diameter_approx_with_x(generators.cycle(9), 2).value <= 8
    assert diameter_approx_with_x(generators.complete(6), 1).value <= 1
    H, _ = gen_diameter_gadget(DisjointnessInstance.from_sets(9, {0}, {0}))
    assert 2 <= diameter_approx_with_x(H, 1).value <= 3


def test_sandwich_on_strongly_connected():
    for G, D in strongly_connected_graphs(60, 100, seed0=2000):
        for x in (1, 2, max(1, math.isqrt(D)), D + 1):
            v = diameter_approx_with_x(G, x).value
            assert v <= D
            if x < D:
                assert v >= D - x


def test_near_endpoint_eccentricity_on_strongly_connected():
    for G, D in strongly_connected_graphs(30, 60, seed0=2500, min_diameter=3):
        eg = ExplicitGraph.from_graph(G)
        x = max(1, math.isqrt(D))
        a = next(v for v in range(G.n) if eccentricity(eg, v) == D)
        for v, d in bfs_distances(eg, a).items():
            if d <= x:
                assert eccentricity(eg, v) >= D - x


def test_upper_bound_on_any_graph():
    for G in random_graphs(40, 50, seed0=2700):
        D, _ = bfs_all_pairs_diameter(ExplicitGraph.from_graph(G))
        for x in (1, 2, 4):
            assert diameter_approx_with_x(G, x).value <= D


def test_eps_examples():
    est = diameter_approx(generators.cycle(4), Fraction(1, 2))
    assert est.value == 3 and est.x_used == 1
    assert diameter_approx(generators.edgeless(1), 1).value == 0
    with pytest.raises(ValueError):
        diameter_approx(generators.cycle(3), 0)


def test_eps_guarantee_both_paths():
    graphs = [g for g, _ in strongly_connected_graphs(20, 80, seed0=3100)]
    graphs += random_graphs(20, 60, seed0=3300)
    for G in graphs:
        D, _ = bfs_all_pairs_diameter(ExplicitGraph.from_graph(G))
        for method in ("auto", "doubling"):
            v = diameter_approx(G, Fraction(1, 2), method=method).value
            assert D - math.ceil(math.sqrt(2 * D)) - 1 <= v <= D


def test_x_for_eps():
    assert x_for_eps(Fraction(1, 2), 6) == 1
    assert x_for_eps(1, 100) == 10
    assert x_for_eps(Fraction(1, 10), 100) == 4


def test_ops_independent_of_set_allocation():
    ctr = OpCounter()
    diameter_exact(generators.cycle(7), ctr)
    assert ctr.one_step == 7 * 7
    assert ctr.alive == 0
    VertexSet(3, [1], ctr)
    assert ctr.alive == 0
