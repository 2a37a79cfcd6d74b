from __future__ import annotations

import itertools

import networkx as nx
import pytest

from cbmcds.generators import GenerationError, RandomParams, lower_bound_graph, random_convex_graph
from cbmcds.graph_core import ConvexBipartiteGraph, VertexSet
from cbmcds.oracle import enumerate_mcds_bruteforce

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def g_from(n_w, pairs) -> ConvexBipartiteGraph:
    return ConvexBipartiteGraph.from_pairs(n_w, pairs)


def vs(*labels: str) -> VertexSet:
    return VertexSet.of(labels)


def to_networkx(g) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(v.label for v in g.vertices())
    for i, m in enumerate(g.u_masks, 1):
        for j in range(1, g.n_w + 1):
            if m >> (j - 1) & 1:
                G.add_edge(f"u{i}", f"w{j}")
    return G


def networkx_mcds(g) -> set[VertexSet]:
    """Independent brute force: networkx predicates, cardinality-ascending subset scan."""
    G = to_networkx(g)
    nodes = sorted(G.nodes)
    found: list[frozenset[str]] = []
    for r in range(1, len(nodes) + 1):
        for combo in itertools.combinations(nodes, r):
            s = frozenset(combo)
            if any(prev < s for prev in found):
                continue
            if nx.is_dominating_set(G, s) and nx.is_connected(G.subgraph(s)):
                found.append(s)
    return {VertexSet.of(s) for s in found}


@pytest.fixture
def k23():
    return g_from(3, [(1, 3), (1, 3)])


@pytest.fixture
def path4():
    return g_from(2, [(1, 1), (1, 2)])


@pytest.fixture
def star14():
    return g_from(4, [(1, 4)])


@pytest.fixture
def lb3():
    return lower_bound_graph(3)


def _corpus(style: str, seeds: int) -> list[tuple[tuple[int, int, int], ConvexBipartiteGraph]]:
    out = []
    for n_u in range(2, 9):
        for n_w in range(2, 9):
            for seed in range(seeds):
                try:
                    g = random_convex_graph(RandomParams(n_u, n_w, seed, style=style))
                except GenerationError:
                    continue
                out.append(((n_u, n_w, seed), g))
    return out


@pytest.fixture(scope="session")
def corpus():
    """Seeded random connected instances, nU and nW in [2, 8], with oracle solutions.

    The geometric style alone gives 539 graphs; the short style adds branch-heavy ones.
    """
    items = [("geometric",) + it for it in _corpus("geometric", 11)]
    items += [("short",) + it for it in _corpus("short", 11)]
    return [(style, key, g, enumerate_mcds_bruteforce(g)) for style, key, g in items]
