import numpy as np
import pytest
from _corpus import random_graphs
from hypothesis import given, settings
from hypothesis import strategies as st

from symgraph import generators
from symgraph.core import (
    ContractError,
    EmptyPickError,
    Graph,
    GraphFormatError,
    Mask,
    OpCounter,
    VertexSet,
    backward_search,
    format_graph,
    forward_search,
    parse_graph,
    parse_vertex_set,
    pick_min,
    post,
    pre,
    set_algebra,
)
from symgraph.oracles import ExplicitGraph, bfs_distances
from symgraph.reductions import (
    DisjointnessInstance,
    gen_buchi_loops,
    gen_diameter_gadget,
    gen_scc_layered,
)


def vs(n, items, ctr=None):
    return VertexSet(n, items, ctr)


def test_post_pre_small(backend):
    G = Graph(3, [(0, 1), (1, 2)])
    assert post(G, vs(3, [0])).to_list() == [1]
    assert pre(G, vs(3, [2])).to_list() == [1]
    assert not post(G, vs(3, []))


def test_reduction_graph_examples():
    inst = DisjointnessInstance.from_sets(4, {2, 3}, {0, 1, 3})
    G, _ = gen_buchi_loops(inst)
    assert post(G, vs(5, [4])).to_list() == [4]

    disjoint = DisjointnessInstance.from_sets(4, {0}, {1})
    G, _ = gen_scc_layered(disjoint, 1)
    assert pre(G, vs(5, [0])).to_list() == [1]
    fw, depth = forward_search(G, vs(5, [4]))
    assert fw.to_list() == list(range(5)) and depth == 4

    G, _ = gen_diameter_gadget(DisjointnessInstance.from_sets(9, {2, 4, 8}, {1, 3, 5}))
    bw, depth = backward_search(G, vs(G.n, [1]))
    assert len(bw) == G.n and depth == 2


def test_undirected_pre_equals_post():
    G = generators.undirected(6, [(0, 1), (1, 2), (3, 4), (5, 5), (2, 5)])
    for mask in range(64):
        S = vs(6, [i for i in range(6) if mask >> i & 1])
        assert post(G, S) == pre(G, S)


def test_one_step_counting():
    G = generators.cycle(5)
    ctr = OpCounter()
    S = vs(5, [0], ctr)
    post(G, S)
    pre(G, S, ctr=ctr)
    assert ctr.one_step == 2 and ctr.set_ops == 0
    post(G, S, Mask(vs(5, [1, 2])))
    assert ctr.one_step == 3 and ctr.set_ops == 1


def test_masked_result_inside_domain():
    G = generators.complete(6)
    dom = vs(6, [1, 3, 5])
    out = post(G, vs(6, [0, 1]), dom)
    # vertex 0 lies outside the domain, so only 1's successors count
    assert out.to_list() == [3, 5]
    assert post(G, vs(6, [0]), Mask(dom)).to_list() == []


def test_set_algebra_examples():
    ctr = OpCounter()
    a, b = vs(5, [1, 3], ctr), vs(5, [2, 3], ctr)
    assert set_algebra(a, b, "union", ctr).to_list() == [1, 2, 3]
    assert set_algebra(a, b, "intersect", ctr).to_list() == [3]
    assert set_algebra(a, b, "difference", ctr).to_list() == [1]
    assert set_algebra(vs(4, []), None, "complement").to_list() == [0, 1, 2, 3]
    assert pick_min(vs(10, [5, 2, 9])) == 2
    assert set_algebra(a, b, "is_subset", ctr) is False
    assert set_algebra(a, a, "equals", ctr) is True
    assert set_algebra(a, None, "cardinality", ctr) == 2
    assert set_algebra(a, None, "is_empty", ctr) is False
    assert ctr.set_ops == 7  # one per call routed to ctr


def test_empty_pick():
    with pytest.raises(EmptyPickError, match="empty pick"):
        vs(3, []).pick_min()


def test_universe_mismatch():
    with pytest.raises(ContractError):
        vs(3, [0]) | vs(4, [0])
    with pytest.raises(ContractError):
        post(generators.path(3), vs(4, [0]))


def test_search_examples(backend):
    C3 = generators.cycle(3)
    fw, d = forward_search(C3, vs(3, [0]))
    assert fw.to_list() == [0, 1, 2] and d == 2
    bw, d = backward_search(C3, vs(3, [0]))
    assert bw.to_list() == [0, 1, 2] and d == 2
    fw, d = forward_search(generators.edgeless(4), vs(4, [2]))
    assert fw.to_list() == [2] and d == 0
    bw, d = backward_search(generators.path(3), vs(3, [0]))
    assert bw.to_list() == [0] and d == 0
    with pytest.raises(ContractError, match="empty source"):
        forward_search(C3, vs(3, []))


def test_search_uses_depth_plus_one_posts():
    for G in random_graphs(40, 40, seed0=3):
        for u in range(min(G.n, 5)):
            ctr = OpCounter()
            _, depth = forward_search(G, vs(G.n, [u], ctr))
            assert ctr.one_step == depth + 1


def test_forward_search_matches_oracle():
    for G in random_graphs(30, 70, seed0=11):
        eg = ExplicitGraph.from_graph(G)
        for u in range(0, G.n, 7):
            fw, depth = forward_search(G, vs(G.n, [u]))
            dist = bfs_distances(eg, u)
            assert fw.to_frozenset() == frozenset(dist) and depth == max(dist.values())


def test_peak_sets_tracks_live_sets():
    ctr = OpCounter()
    a = vs(8, [1], ctr)
    b = a | a
    c = b | a
    assert ctr.peak_sets == 3
    del a, b, c
    assert ctr.alive == 0
    d = vs(8, [2], ctr)
    assert ctr.peak_sets == 3
    ctr.reset()
    # sets still alive at reset count towards the new peak
    assert ctr.snapshot() == {"one_step": 0, "set_ops": 0, "peak_sets": 1}
    del d


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 140).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n),
    st.sets(st.integers(0, n - 1)),
    st.sets(st.integers(0, n - 1)),
)))
def test_post_properties(case):
    n, edges, A, B = case
    G = Graph(n, edges)
    a, b = vs(n, A), vs(n, B)
    expect = {v for (u, v) in edges if u in A}
    assert post(G, a).to_frozenset() == expect
    assert pre(G, a) == post(G.transpose(), a)
    assert post(G, a | b) == post(G, a) | post(G, b)
    if A <= B:
        assert post(G, a) <= post(G, b)


def test_graph_io_round_trip():
    G = generators.random_digraph(30, 0.1, 4)
    H = parse_graph(format_graph(G, comment="round trip"))
    assert H == G and H.digest() == G.digest()


@pytest.mark.parametrize("text, line, col", [
    ("", None, None),
    ("3 1\n0 x\n", 2, 3),
    ("3 1\n0 5\n", 2, 3),
    ("3 2\n0 1\n0 1\n", 3, 1),
    ("3 2\n0 1\n", 2, None),
    ("# c\n3\n", 2, 1),
    ("3 1\n0 1 2\n", 2, 1),
])
def test_parse_errors(text, line, col):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert err.value.line == line and err.value.col == col


def test_vertex_set_file():
    assert parse_vertex_set("# t\n3 1\n", 5).to_list() == [1, 3]
    with pytest.raises(GraphFormatError):
        parse_vertex_set("1 9", 5)


def test_graph_is_immutable():
    G = generators.path(4)
    with pytest.raises(ValueError):
        G._succ[0, 0] = 1
    assert G.adjacency().dtype == np.bool_


class CountingGraph(Graph):
    __slots__ = ("calls",)

    def _image(self, words, forward, domain=None):
        self.calls += 1
        return super()._image(words, forward, domain)


def test_reported_one_step_equals_image_calls():
    from symgraph.diameter import diameter_approx, diameter_exact
    from symgraph.objectives import KINDS, ObjectiveQuery, solve
    from symgraph.scc import scc_decomposition

    base = generators.random_strongly_connected(30, 0.05, 2)
    G = CountingGraph.from_adjacency(base.adjacency())
    runs = [lambda c: scc_decomposition(G, c),
            lambda c: diameter_exact(G, c),
            lambda c: diameter_approx(G, 1, c)]
    runs += [lambda c, k=k: solve(G, ObjectiveQuery(k, VertexSet(30, [0, 5, 7], c)), c) for k in KINDS]
    for fn in runs:
        G.calls = 0
        ctr = OpCounter()
        fn(ctr)
        assert ctr.one_step == G.calls
