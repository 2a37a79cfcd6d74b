"""Convex bipartite graphs and the polynomial-time predicates used everywhere else.

Vertices are addressed 1-based on both sides: ``u1..u{nU}`` and ``w1..w{nW}``.
Sets of vertices are stored as a pair of bitmasks (bit ``i-1`` <-> index ``i``).
Canonical vertex order is U ascending, then W ascending.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

U = "U"
W = "W"


class GraphError(ValueError):
    """Raised when an operation's contract on its graph arguments is violated."""


class VertexRef(NamedTuple):
    side: str
    index: int

    @property
    def label(self) -> str:
        return f"{self.side.lower()}{self.index}"

    @classmethod
    def parse(cls, label: str) -> "VertexRef":
        side = label[:1].upper()
        if side not in (U, W) or not label[1:].isdigit():
            raise ValueError(f"bad vertex label {label!r}")
        return cls(side, int(label[1:]))

    def __repr__(self) -> str:
        return self.label


def iter_bits(mask: int) -> Iterator[int]:
    """1-based indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


@dataclass(frozen=True, order=False)
class VertexSet:
    """Immutable set of vertices as two bit fields, one per side."""

    u: int = 0
    w: int = 0

    @classmethod
    def of(cls, refs: Iterable[VertexRef | str]) -> "VertexSet":
        um = wm = 0
        for r in refs:
            if isinstance(r, str):
                r = VertexRef.parse(r)
            if r.index < 1:
                raise ValueError(f"vertex index must be positive: {r}")
            if r.side == U:
                um |= 1 << (r.index - 1)
            else:
                wm |= 1 << (r.index - 1)
        return cls(um, wm)

    @classmethod
    def from_indices(cls, u: Iterable[int] = (), w: Iterable[int] = ()) -> "VertexSet":
        return cls(sum(1 << (i - 1) for i in set(u)), sum(1 << (j - 1) for j in set(w)))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u | other.u, self.w | other.w)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u & other.u, self.w & other.w)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.u & ~other.u, self.w & ~other.w)

    def __le__(self, other: "VertexSet") -> bool:
        return not (self.u & ~other.u) and not (self.w & ~other.w)

    def __lt__(self, other: "VertexSet") -> bool:
        return self <= other and self != other

    def __len__(self) -> int:
        return self.u.bit_count() + self.w.bit_count()

    def __bool__(self) -> bool:
        return bool(self.u or self.w)

    def __contains__(self, v: VertexRef) -> bool:
        mask = self.u if v.side == U else self.w
        return bool(mask >> (v.index - 1) & 1)

    def __iter__(self) -> Iterator[VertexRef]:
        for i in iter_bits(self.u):
            yield VertexRef(U, i)
        for j in iter_bits(self.w):
            yield VertexRef(W, j)

    @property
    def u_indices(self) -> list[int]:
        return list(iter_bits(self.u))

    @property
    def w_indices(self) -> list[int]:
        return list(iter_bits(self.w))

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        """Lexicographic key over canonical vertex order."""
        return tuple((0, i) for i in iter_bits(self.u)) + tuple((1, j) for j in iter_bits(self.w))

    def labels(self) -> list[str]:
        return [v.label for v in self]

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


@dataclass(frozen=True)
class Interval:
    left: int
    right: int

    def __post_init__(self) -> None:
        if not 1 <= self.left <= self.right:
            raise ValueError(f"invalid interval [{self.left},{self.right}]")

    def __contains__(self, j: int) -> bool:
        return self.left <= j <= self.right

    def __len__(self) -> int:
        return self.right - self.left + 1

    def issubset(self, other: "Interval") -> bool:
        return other.left <= self.left and self.right <= other.right

    def intersects(self, other: "Interval") -> bool:
        return self.left <= other.right and other.left <= self.right

    @property
    def mask(self) -> int:
        return ((1 << len(self)) - 1) << (self.left - 1)

    def __repr__(self) -> str:
        return f"[{self.left},{self.right}]"


class _BipartiteBase:
    """Shared predicates over bitmask neighbourhoods.

    Subclasses provide ``n_u``, ``n_w`` and ``u_masks`` (W-bitmask per U vertex,
    0-based list position).
    """

    n_u: int
    n_w: int

    @cached_property
    def w_masks(self) -> tuple[int, ...]:
        out = [0] * self.n_w
        for i, m in enumerate(self.u_masks):
            for j in iter_bits(m):
                out[j - 1] |= 1 << i
        return tuple(out)

    @property
    def n(self) -> int:
        return self.n_u + self.n_w

    @property
    def m(self) -> int:
        return sum(m.bit_count() for m in self.u_masks)

    @property
    def all_vertices(self) -> VertexSet:
        return VertexSet((1 << self.n_u) - 1, (1 << self.n_w) - 1)

    def vertices(self) -> list[VertexRef]:
        return list(self.all_vertices)

    def check_vertex(self, v: VertexRef) -> None:
        bound = self.n_u if v.side == U else self.n_w if v.side == W else 0
        if not 1 <= v.index <= bound:
            raise GraphError(f"vertex {v!r} out of range for graph with nU={self.n_u}, nW={self.n_w}")

    def check_subset(self, d: VertexSet) -> None:
        if d.u >> self.n_u or d.w >> self.n_w:
            raise GraphError(f"{d!r} is not a subset of V(G)")

    def neighbor_mask(self, v: VertexRef) -> int:
        self.check_vertex(v)
        return self.u_masks[v.index - 1] if v.side == U else self.w_masks[v.index - 1]


@dataclass(frozen=True)
class BipartiteGraph(_BipartiteBase):
    """General bipartite graph; U-neighbourhoods are arbitrary sets of W indices."""

    n_u: int
    n_w: int
    u_neighbors: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.u_neighbors) != self.n_u:
            raise GraphError("need one neighbourhood per U vertex")
        for i, nb in enumerate(self.u_neighbors, 1):
            bad = [j for j in nb if not 1 <= j <= self.n_w]
            if bad:
                raise GraphError(f"u{i} has out-of-range neighbours {bad}")

    @cached_property
    def u_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << (j - 1) for j in nb) for nb in self.u_neighbors)


@dataclass(frozen=True)
class ConvexBipartiteGraph(_BipartiteBase):
    """Bipartite graph whose U-neighbourhoods are intervals of the ordered W side."""

    n_u: int
    n_w: int
    intervals: tuple[Interval, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if self.n_u < 0 or self.n_w < 0:
            raise GraphError("side sizes must be non-negative")
        if len(self.intervals) != self.n_u:
            raise GraphError(f"expected {self.n_u} intervals, got {len(self.intervals)}")
        for i, iv in enumerate(self.intervals, 1):
            if iv.right > self.n_w:
                raise GraphError(f"interval of u{i} {iv!r} exceeds nW={self.n_w}")

    @classmethod
    def from_pairs(cls, n_w: int, pairs: Sequence[tuple[int, int]]) -> "ConvexBipartiteGraph":
        return cls(len(pairs), n_w, tuple(Interval(l, r) for l, r in pairs))

    @cached_property
    def u_masks(self) -> tuple[int, ...]:
        return tuple(iv.mask for iv in self.intervals)

    def interval(self, i: int) -> Interval:
        return self.intervals[i - 1]


AnyBipartite = _BipartiteBase


@dataclass
class ValidationReport:
    connected: bool
    is_star: bool
    star_center: VertexRef | None
    isolated_vertices: VertexSet
    interval_errors: list[tuple[int, str]]

    @property
    def ok(self) -> bool:
        return self.connected and not self.interval_errors


def neighbors(g: AnyBipartite, v: VertexRef) -> VertexSet:
    """Open neighbourhood N(v)."""
    m = g.neighbor_mask(v)
    return VertexSet(0, m) if v.side == U else VertexSet(m, 0)


def _component_of(g: AnyBipartite, d: VertexSet, start: VertexSet) -> VertexSet:
    """Vertices of G[d] reachable from ``start`` (which must lie in d)."""
    ru, rw = start.u, start.w
    fu, fw = ru, rw
    um, wm = g.u_masks, g.w_masks
    while fu or fw:
        nw = 0
        for i in iter_bits(fu):
            nw |= um[i - 1]
        nu = 0
        for j in iter_bits(fw):
            nu |= wm[j - 1]
        fu = nu & d.u & ~ru
        fw = nw & d.w & ~rw
        ru |= fu
        rw |= fw
    return VertexSet(ru, rw)


def _first(d: VertexSet) -> VertexSet:
    if d.u:
        return VertexSet(d.u & -d.u, 0)
    return VertexSet(0, d.w & -d.w)


def is_connected_induced(g: AnyBipartite, d: VertexSet) -> bool:
    """True iff G[d] is connected; the empty set is not."""
    if not d:
        return False
    return _component_of(g, d, _first(d)) == d


def is_dominating(g: AnyBipartite, d: VertexSet) -> bool:
    for i, m in enumerate(g.u_masks):
        if not (d.u >> i & 1) and not (m & d.w):
            return False
    for j, m in enumerate(g.w_masks):
        if not (d.w >> j & 1) and not (m & d.u):
            return False
    return True


def is_cds(g: AnyBipartite, d: VertexSet) -> bool:
    return is_dominating(g, d) and is_connected_induced(g, d)


def _without(d: VertexSet, v: VertexRef) -> VertexSet:
    bit = 1 << (v.index - 1)
    return VertexSet(d.u & ~bit, d.w) if v.side == U else VertexSet(d.u, d.w & ~bit)


def is_minimal_cds_direct(g: AnyBipartite, d: VertexSet) -> bool:
    """Definition check: d is a CDS and no D minus one vertex is a CDS.

    Single-vertex removals suffice: any proper CDS subset of a CDS can be grown
    back to it one adjacent vertex at a time, so the last step drops one vertex.
    """
    if not is_cds(g, d):
        return False
    return not any(is_cds(g, _without(d, v)) for v in d)


def private_neighbors(g: AnyBipartite, d: VertexSet, v: VertexRef) -> VertexSet:
    """Vertices dominated by v and not by d minus v."""
    rest = _without(d, v)
    own = neighbors(g, v) | VertexSet.of([v])
    out_u = out_w = 0
    for x in own:
        if x in rest:
            continue
        if x.side == U and not (g.u_masks[x.index - 1] & rest.w):
            out_u |= 1 << (x.index - 1)
        elif x.side == W and not (g.w_masks[x.index - 1] & rest.u):
            out_w |= 1 << (x.index - 1)
    return VertexSet(out_u, out_w)


def is_minimal_cds(g: AnyBipartite, d: VertexSet) -> bool:
    """CDS in which every member has a private neighbour or is a cut vertex of G[d]."""
    if not is_cds(g, d):
        return False
    for v in d:
        if private_neighbors(g, d, v):
            continue
        rest = _without(d, v)
        if rest and is_connected_induced(g, rest):
            return False
    return True


def cut_vertices(g: AnyBipartite) -> VertexSet:
    """Articulation points of a connected graph (removal test per vertex)."""
    full = g.all_vertices
    if not is_connected_induced(g, full):
        raise GraphError("cut vertices undefined for disconnected graph")
    out = VertexSet()
    for v in full:
        rest = _without(full, v)
        if rest and not is_connected_induced(g, rest):
            out = out | VertexSet.of([v])
    return out


def validate(g: ConvexBipartiteGraph) -> ValidationReport:
    errors: list[tuple[int, str]] = []
    for i, iv in enumerate(g.intervals, 1):
        if iv.right > g.n_w:
            errors.append((i, f"right endpoint {iv.right} exceeds nW={g.n_w}"))
    full = g.all_vertices
    isolated = VertexSet(
        sum(1 << i for i, m in enumerate(g.u_masks) if not m),
        sum(1 << j for j, m in enumerate(g.w_masks) if not m),
    )
    connected = is_connected_induced(g, full) if g.n > 0 else False
    center = None
    if connected and g.n >= 3:
        if g.n_u == 1 and g.u_masks[0] == full.w:
            center = VertexRef(U, 1)
        elif g.n_w == 1 and g.w_masks[0] == full.u:
            center = VertexRef(W, 1)
    return ValidationReport(connected, center is not None, center, isolated, errors)


def check_convex_ordering(adjacency: Sequence[Iterable[int]], ordering: Sequence[int]) -> bool:
    """Whether every U-neighbourhood is consecutive under ``ordering`` of W.

    ``adjacency[i]`` holds the 1-based W indices adjacent to u_{i+1}; ``ordering``
    lists the W indices in their new order.
    """
    n_w = len(ordering)
    if sorted(ordering) != list(range(1, n_w + 1)):
        raise GraphError(f"ordering {list(ordering)} is not a permutation of 1..{n_w}")
    pos = {w: p for p, w in enumerate(ordering)}
    for nb in adjacency:
        nb = set(nb)
        if not nb:
            continue
        if not nb <= pos.keys():
            raise GraphError(f"neighbourhood {sorted(nb)} mentions vertices outside W")
        ps = sorted(pos[w] for w in nb)
        if ps[-1] - ps[0] + 1 != len(ps):
            return False
    return True


def find_convex_ordering(adjacency: Sequence[Iterable[int]], n_w: int, cap: int = 9) -> list[int] | None:
    """Brute-force search for a convex W ordering; test helper for tiny graphs."""
    if n_w > cap:
        raise GraphError(f"refusing permutation search over nW={n_w} > {cap}")
    for perm in itertools.permutations(range(1, n_w + 1)):
        if check_convex_ordering(adjacency, perm):
            return list(perm)
    return None


def convex_from_adjacency(adjacency: Sequence[Iterable[int]], ordering: Sequence[int]) -> ConvexBipartiteGraph:
    """Relabel W by ``ordering`` and return the interval form."""
    if not check_convex_ordering(adjacency, ordering):
        raise GraphError("ordering is not convex for this adjacency")
    pos = {w: p + 1 for p, w in enumerate(ordering)}
    pairs = []
    for i, nb in enumerate(adjacency, 1):
        ps = [pos[w] for w in nb]
        if not ps:
            raise GraphError(f"u{i} has an empty neighbourhood")
        pairs.append((min(ps), max(ps)))
    return ConvexBipartiteGraph.from_pairs(len(ordering), pairs)

