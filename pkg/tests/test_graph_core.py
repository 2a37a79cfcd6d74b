import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbmcds.generators import lower_bound_graph, lower_bound_labels
from cbmcds.graph_core import (
    ConvexBipartiteGraph,
    GraphError,
    Interval,
    VertexRef,
    VertexSet,
    check_convex_ordering,
    convex_from_adjacency,
    cut_vertices,
    find_convex_ordering,
    is_connected_induced,
    is_dominating,
    is_minimal_cds,
    is_minimal_cds_direct,
    neighbors,
    validate,
)

from conftest import g_from, to_networkx, vs


@st.composite
def convex_graphs(draw, max_u=6, max_w=6):
    n_w = draw(st.integers(1, max_w))
    n_u = draw(st.integers(1, max_u))
    pairs = []
    for _ in range(n_u):
        left = draw(st.integers(1, n_w))
        pairs.append((left, draw(st.integers(left, n_w))))
    return g_from(n_w, pairs)


def test_vertex_set_algebra_and_order():
    a = vs("w2", "u3", "u1")
    b = vs("u1", "w5")
    assert list(a) == [VertexRef("U", 1), VertexRef("U", 3), VertexRef("W", 2)]
    assert a | b == vs("u1", "u3", "w2", "w5")
    assert a & b == vs("u1")
    assert a - b == vs("u3", "w2")
    assert len(a) == 3 and vs("u1") < a and not a <= b
    assert VertexRef("W", 2) in a and VertexRef("W", 5) not in a
    assert a.labels() == ["u1", "u3", "w2"]


def test_interval_invariants():
    with pytest.raises(ValueError):
        Interval(3, 2)
    with pytest.raises(ValueError):
        Interval(0, 2)
    iv = Interval(2, 4)
    assert 2 in iv and 4 in iv and 5 not in iv and len(iv) == 3
    assert iv.mask == 0b1110
    with pytest.raises(GraphError):
        g_from(3, [(1, 4)])


def test_neighbors_examples(k23, path4, lb3):
    assert neighbors(k23, VertexRef("W", 2)) == vs("u1", "u2")
    assert neighbors(path4, VertexRef("W", 1)) == vs("u1", "u2")
    names = lower_bound_labels(3)
    assert names["x3"] == "w4"
    expected = vs(names["x2"], names["y2"], names["z2"], names["v"])
    assert neighbors(lb3, VertexRef("W", 4)) == expected
    with pytest.raises(GraphError):
        neighbors(k23, VertexRef("U", 3))


@given(convex_graphs())
def test_neighbors_symmetric(g):
    for v in g.vertices():
        for x in neighbors(g, v):
            assert v in neighbors(g, x)
    assert g.m == sum(len(iv) for iv in g.intervals)


def test_validate_examples(star14, lb3):
    rep = validate(star14)
    assert rep.connected and rep.is_star and rep.star_center == VertexRef("U", 1)
    rep = validate(g_from(2, [(1, 1), (2, 2)]))
    assert not rep.connected and not rep.is_star
    rep = validate(lb3)
    assert rep.connected and not rep.is_star
    # centre on the W side
    rep = validate(g_from(1, [(1, 1)] * 3))
    assert rep.is_star and rep.star_center == VertexRef("W", 1)
    # K2 has no internal node
    assert not validate(g_from(1, [(1, 1)])).is_star


def test_validate_reports_isolated_w():
    rep = validate(g_from(3, [(1, 1), (1, 2)]))
    assert not rep.connected
    assert rep.isolated_vertices == vs("w3")


def test_is_connected_induced(k23, lb3):
    assert is_connected_induced(k23, vs("u1", "w1"))
    assert not is_connected_induced(k23, vs("u1", "u2"))
    assert not is_connected_induced(k23, VertexSet())
    assert is_connected_induced(k23, vs("w3"))
    names = lower_bound_labels(3)
    assert is_connected_induced(lb3, vs(names["x1"], names["x2"], names["x3"]))


def test_is_dominating(k23):
    assert is_dominating(k23, vs("u1", "w1"))
    assert not is_dominating(k23, vs("w1"))
    assert is_dominating(k23, k23.all_vertices)


def test_is_minimal_cds_examples(path4, k23):
    assert is_minimal_cds(path4, vs("w1", "u2"))
    assert not is_minimal_cds(path4, vs("u1", "w1", "u2"))
    assert is_minimal_cds(k23, vs("u1", "w1"))
    for d in (vs("w1", "u2"), vs("u1", "w1", "u2")):
        assert is_minimal_cds_direct(path4, d) == is_minimal_cds(path4, d)


def _all_subsets(g):
    for um in range(1 << g.n_u):
        for wm in range(1 << g.n_w):
            yield VertexSet(um, wm)


@pytest.mark.parametrize("seed", range(40))
def test_minimality_characterisation_exhaustive(seed):
    rng = random.Random(seed)
    n_u, n_w = rng.randint(1, 6), rng.randint(1, 6)
    pairs = []
    for _ in range(n_u):
        left = rng.randint(1, n_w)
        pairs.append((left, rng.randint(left, n_w)))
    g = g_from(n_w, pairs)
    assert g.n <= 12
    for d in _all_subsets(g):
        assert is_minimal_cds(g, d) == is_minimal_cds_direct(g, d), d


@settings(max_examples=60, deadline=None)
@given(convex_graphs(max_u=10, max_w=10), st.randoms(use_true_random=False))
def test_minimality_characterisation_random_subsets(g, rnd):
    full = g.all_vertices
    for _ in range(50):
        d = VertexSet(rnd.getrandbits(g.n_u) & full.u, rnd.getrandbits(g.n_w) & full.w)
        assert is_minimal_cds(g, d) == is_minimal_cds_direct(g, d)


@given(convex_graphs())
def test_predicates_match_networkx(g):
    import networkx as nx

    G = to_networkx(g)
    for d in itertools.islice(_all_subsets(g), 200):
        labels = d.labels()
        assert is_dominating(g, d) == nx.is_dominating_set(G, labels)
        if d:
            assert is_connected_induced(g, d) == nx.is_connected(G.subgraph(labels))


def test_cut_vertices(path4, k23, star14):
    assert cut_vertices(path4) == vs("w1", "u2")
    assert cut_vertices(k23) == VertexSet()
    assert cut_vertices(star14) == vs("u1")
    with pytest.raises(GraphError, match="disconnected"):
        cut_vertices(g_from(2, [(1, 1), (2, 2)]))


@given(convex_graphs())
def test_cut_vertices_match_networkx(g):
    import networkx as nx

    G = to_networkx(g)
    if not nx.is_connected(G):
        return
    assert set(cut_vertices(g).labels()) == set(nx.articulation_points(G))


def test_check_convex_ordering():
    c6 = [{1, 3}, {1, 2}, {2, 3}]
    assert not any(check_convex_ordering(c6, p) for p in itertools.permutations([1, 2, 3]))
    assert find_convex_ordering(c6, 3) is None
    assert check_convex_ordering([{1, 2, 3}, {1, 2, 3}], [1, 2, 3])
    assert check_convex_ordering([{1}, {1, 2}], [1, 2])
    with pytest.raises(GraphError):
        check_convex_ordering([{1}], [1, 1])


def test_convex_from_adjacency_roundtrip():
    adj = [{2, 3}, {1, 3}, {1}]
    order = find_convex_ordering(adj, 3)
    assert order is not None
    g = convex_from_adjacency(adj, order)
    assert isinstance(g, ConvexBipartiteGraph)
    assert [len(iv) for iv in g.intervals] == [2, 2, 1]


def test_lower_bound_figure_intervals():
    g = lower_bound_graph(3)
    assert [(iv.left, iv.right) for iv in g.intervals] == [(1, 3), (1, 6), (1, 6), (1, 6), (4, 6)]
