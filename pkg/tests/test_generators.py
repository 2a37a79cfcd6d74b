import pytest

from cbmcds.enumerator import enumerate_mcds
from cbmcds.formats import serialize_graph
from cbmcds.generators import (
    GenerationError,
    LowerBoundParams,
    RandomParams,
    SplitMix64,
    lower_bound_graph,
    lower_bound_labels,
    random_convex_graph,
)
from cbmcds.graph_core import validate
from cbmcds.oracle import enumerate_mcds_bruteforce

from conftest import vs


@pytest.mark.parametrize("k", [1, 2, 4, 0, -3])
def test_lower_bound_rejects(k):
    with pytest.raises(ValueError):
        LowerBoundParams(k)


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_lower_bound_shape(k):
    g = lower_bound_graph(k)
    assert g.n == 3 * k + 2
    rep = validate(g)
    assert rep.connected and not rep.is_star
    names = lower_bound_labels(k)
    assert len(set(names.values())) == g.n


def test_lower_bound_3_intervals():
    g = lower_bound_graph(3)
    assert (g.n_u, g.n_w) == (5, 6)
    assert [(iv.left, iv.right) for iv in g.intervals] == [(1, 3), (1, 6), (1, 6), (1, 6), (4, 6)]


def test_lower_bound_edges_follow_triples():
    # x_i adjacent to exactly T_{i-1} and T_{i+1}; u to T_1, v to T_k
    k = 7
    g = lower_bound_graph(k)
    names = lower_bound_labels(k)
    from cbmcds.graph_core import VertexRef, neighbors

    def nb(name):
        return set(neighbors(g, VertexRef.parse(names[name])).labels())

    def triple(i):
        return {names[f"{c}{i}"] for c in "xyz"}

    assert nb("u") == triple(1)
    assert nb("v") == triple(k)
    for i in range(1, k + 1):
        want = (triple(i - 1) if i > 1 else {names["u"]}) | (triple(i + 1) if i < k else {names["v"]})
        for c in "xyz":
            assert nb(f"{c}{i}") == want


@pytest.mark.parametrize("k", [3, 5])
def test_lower_bound_solution_structure(k):
    g = lower_bound_graph(k)
    names = lower_bound_labels(k)
    sols = enumerate_mcds_bruteforce(g)
    assert sols.count == 3**k
    for d in sols:
        labels = set(d.labels())
        assert names["u"] not in labels and names["v"] not in labels
        for i in range(1, k + 1):
            assert len(labels & {names[f"{c}{i}"] for c in "xyz"}) == 1


def test_k1_would_break_count():
    # the k=1 graph is K_{2,3}: 6 solutions, not 3
    from conftest import g_from

    assert enumerate_mcds_bruteforce(g_from(3, [(1, 3), (1, 3)])).count == 6


def test_splitmix64_reference_values():
    # first outputs for seed 0 from the published reference implementation
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_random_small_agrees():
    g = random_convex_graph(RandomParams(2, 2, 1))
    assert g.n == 4 and validate(g).connected
    assert enumerate_mcds(g).solutions == enumerate_mcds_bruteforce(g)
    assert list(enumerate_mcds(g).solutions) == [vs("u1", "w2")]


def test_random_regression_fixture():
    g = random_convex_graph(RandomParams(6, 6, 42))
    assert [(iv.left, iv.right) for iv in g.intervals] == [(1, 4), (6, 6), (2, 3), (2, 2), (5, 5), (3, 6)]
    assert enumerate_mcds_bruteforce(g).count == 2


@pytest.mark.parametrize("seed", range(10))
def test_random_reproducible(seed):
    p = RandomParams(5, 7, seed)
    assert serialize_graph(random_convex_graph(p)).encode() == serialize_graph(random_convex_graph(p)).encode()


def test_random_retry_exhaustion():
    with pytest.raises(GenerationError, match="nU=2, nW=8"):
        random_convex_graph(RandomParams(2, 8, 3, max_retries=5, style="short"))
    g = random_convex_graph(RandomParams(2, 8, 3))
    assert validate(g).connected


def test_random_params_validation():
    with pytest.raises(ValueError):
        RandomParams(1, 4, 0)
    with pytest.raises(ValueError):
        RandomParams(3, 4, 0, style="dense")
