"""Brute-force enumeration of minimal connected dominating sets, and structural checks.

The scan evaluates every subset of V at once with numpy: subsets are integers
over the global bit order (U vertices first, then W), so a domination or
connectivity test is a handful of vectorised mask operations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .graph_core import (
    AnyBipartite,
    ConvexBipartiteGraph,
    GraphError,
    VertexRef,
    VertexSet,
    cut_vertices,
    is_connected_induced,
    is_minimal_cds,
    validate,
)

DEFAULT_MAX_N = 24
_CHUNK = 1 << 20


class OracleRefusal(GraphError):
    """The instance exceeds the brute-force size cap."""


class SolutionSet:
    """Duplicate-free family of vertex sets, iterated in canonical lexicographic order."""

    def __init__(self, solutions: Iterable[VertexSet] = ()):
        self._set = frozenset(solutions)
        self._sorted = sorted(self._set, key=VertexSet.sort_key)

    @property
    def count(self) -> int:
        return len(self._set)

    def __len__(self) -> int:
        return len(self._set)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self._sorted)

    def __contains__(self, d: VertexSet) -> bool:
        return d in self._set

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SolutionSet):
            return self._set == other._set
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._set)

    def as_frozenset(self) -> frozenset[VertexSet]:
        return self._set

    def __repr__(self) -> str:
        return f"SolutionSet(count={self.count})"


def _global_masks(g: AnyBipartite) -> list[int]:
    """Open neighbourhoods over the global bit order."""
    nu = g.n_u
    out = [m << nu for m in g.u_masks]
    out += list(g.w_masks)
    return out


def _to_vertex_set(s: int, n_u: int) -> VertexSet:
    return VertexSet(s & ((1 << n_u) - 1), s >> n_u)


def _cds_table(g: AnyBipartite) -> np.ndarray:
    """Boolean table indexed by subset integer: is the subset a connected dominating set."""
    n = g.n
    nbr = _global_masks(g)
    closed = [nbr[v] | (1 << v) for v in range(n)]
    table = np.zeros(1 << n, dtype=bool)
    dtype = np.int64
    nbr_arr = np.array(nbr, dtype=dtype)
    for start in range(0, 1 << n, _CHUNK):
        s = np.arange(start, min(start + _CHUNK, 1 << n), dtype=dtype)
        dom = np.ones(s.shape, dtype=bool)
        for c in closed:
            dom &= (s & c) != 0
        cand = s[dom]
        if cand.size == 0:
            continue
        reach = cand & -cand
        while True:
            grown = reach.copy()
            for v in range(n):
                hit = (reach >> v) & 1
                grown |= hit * nbr_arr[v]
            grown &= cand
            if np.array_equal(grown, reach):
                break
            reach = grown
        table[cand[reach == cand]] = True
    return table


def _minimal_single_removal(table: np.ndarray, n: int) -> np.ndarray:
    """CDS whose every one-vertex-smaller subset fails to be a CDS."""
    idx = np.flatnonzero(table).astype(np.int64)
    keep = np.ones(idx.shape, dtype=bool)
    for v in range(n):
        bit = np.int64(1 << v)
        has = (idx & bit) != 0
        keep &= ~(has & table[idx ^ bit])
    return idx[keep]


def _minimal_no_subset(table: np.ndarray, n: int) -> np.ndarray:
    """CDS with no proper subset that is a CDS (subset closure via a zeta transform)."""
    below = table.copy()
    size = 1 << n
    for v in range(n):
        step = 1 << v
        view = below.reshape(-1, 2, step)
        view[:, 1, :] |= view[:, 0, :]
    idx = np.flatnonzero(table).astype(np.int64)
    proper = np.zeros(idx.shape, dtype=bool)
    for v in range(n):
        bit = np.int64(1 << v)
        has = (idx & bit) != 0
        proper |= has & below[idx ^ bit]
    assert below.shape[0] == size
    return idx[~proper]


def enumerate_mcds_bruteforce(
    g: AnyBipartite,
    max_n: int = DEFAULT_MAX_N,
    mode: str = "removal",
    selfcheck: int = 100,
    seed: int = 0,
) -> SolutionSet:
    """All minimal connected dominating sets of ``g`` by scanning every subset.

    ``mode="removal"`` keeps CDS with no CDS one vertex smaller; ``mode="subset"``
    keeps CDS with no proper CDS subset at all. Up to ``selfcheck`` members are
    re-verified with the scalar predicate.
    """
    n = g.n
    if n > max_n:
        raise OracleRefusal(f"graph has n={n} vertices, above the brute-force cap max_n={max_n}")
    if n == 0:
        return SolutionSet()
    table = _cds_table(g)
    if mode == "removal":
        found = _minimal_single_removal(table, n)
    elif mode == "subset":
        found = _minimal_no_subset(table, n)
    else:
        raise ValueError(f"unknown oracle mode {mode!r}")
    sols = SolutionSet(_to_vertex_set(int(s), g.n_u) for s in found)
    if selfcheck:
        rng = random.Random(seed)
        members = list(sols)
        for d in rng.sample(members, min(selfcheck, len(members))):
            if not is_minimal_cds(g, d):
                raise AssertionError(f"oracle produced non-minimal set {d!r}")
    return sols


# --- structural checks -------------------------------------------------------

LEMMA_IDS = ("neighbor_in_D", "nested_pair", "shared_endpoint", "consecutive_cover",
             "consecutive_W_cover", "forbidden_overlap", "one_inside_union")


@dataclass
class LemmaReport:
    violations: dict[str, list[tuple[VertexSet, tuple[VertexRef, ...]]]] = field(
        default_factory=lambda: {k: [] for k in LEMMA_IDS}
    )

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def add(self, lemma: str, d: VertexSet, *witness: VertexRef) -> None:
        self.violations[lemma].append((d, tuple(witness)))

    def merge(self, other: "LemmaReport") -> None:
        for k, v in other.violations.items():
            self.violations.setdefault(k, []).extend(v)

    def summary(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.violations.items()}


def _u(i: int) -> VertexRef:
    return VertexRef("U", i)


def _w(j: int) -> VertexRef:
    return VertexRef("W", j)


def _check_one(g: ConvexBipartiteGraph, d: VertexSet, rep: LemmaReport) -> None:
    iv = g.intervals
    du = d.u_indices
    dw = d.w_indices

    for v in g.vertices():
        nb = g.neighbor_mask(v)
        if not nb & (d.w if v.side == "U" else d.u):
            rep.add("neighbor_in_D", d, v)

    for a, b in combinations(range(1, g.n_u + 1), 2):
        ia, ib = iv[a - 1], iv[b - 1]
        both = a in du and b in du
        if both and (ia.issubset(ib) or ib.issubset(ia)):
            rep.add("nested_pair", d, _u(a), _u(b))
        if both and (ia.left == ib.left or ia.right == ib.right):
            rep.add("shared_endpoint", d, _u(a), _u(b))

    for j in range(1, g.n_w):
        if not any(j in iv[i - 1] and j + 1 in iv[i - 1] for i in du):
            rep.add("consecutive_cover", d, _w(j), _w(j + 1))

    for a, b in zip(dw, dw[1:]):
        if not any(a in iv[i - 1] and b in iv[i - 1] for i in du):
            rep.add("consecutive_W_cover", d, _w(a), _w(b))

    for i, j in combinations(du, 2):
        ii, ij = iv[i - 1], iv[j - 1]
        if not ii.intersects(ij):
            continue
        union = ii.mask | ij.mask
        inside = [k for k in du if k not in (i, j)
                  and iv[k - 1].mask & ~union == 0 and iv[k - 1].mask != union]
        if inside and ii.mask & ij.mask & d.w:
            rep.add("forbidden_overlap", d, _u(i), _u(j), _u(inside[0]))
        if len(inside) > 1:
            rep.add("one_inside_union", d, _u(i), _u(j), *map(_u, inside))


def check_lemmas(g: ConvexBipartiteGraph, sols: Iterable[VertexSet]) -> LemmaReport:
    """Run every structural property on every solution; raise on non-minimal input."""
    if g.n_u < 2 or g.n_w < 2:
        raise GraphError("structural checks need |U| >= 2 and |W| >= 2")
    if not validate(g).connected:
        raise GraphError("structural checks need a connected graph")
    rep = LemmaReport()
    for d in sols:
        if not is_minimal_cds(g, d):
            raise GraphError(f"{d!r} is not a minimal connected dominating set")
        _check_one(g, d, rep)
    return rep


def cut_vertex_violations(g: AnyBipartite, sols: Iterable[VertexSet]) -> list[VertexSet]:
    """Solutions missing some cut vertex of G."""
    if not is_connected_induced(g, g.all_vertices):
        return []
    cuts = cut_vertices(g)
    return [d for d in sols if not cuts <= d]
