"""Four-stage branching enumeration of minimal connected dominating sets.

Stage 1 fixes the unique D-vertex among the neighbours of w1.  Stage 2 walks
right along W choosing D ∩ U, discarding U vertices into T and forbidding
W vertices in F.  Stage 3 turns a finished (D, T, F) into constraint
intervals J, each of which must receive exactly one W vertex, and Stage 4
makes those choices.  Every leaf goes through a final minimality gate.

Each node of the search tree carries the measure |undecided U| + |available W \\ F|.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .graph_core import (
    ConvexBipartiteGraph,
    Interval,
    VertexSet,
    iter_bits,
    is_minimal_cds,
    validate,
)
from .oracle import SolutionSet, enumerate_mcds_bruteforce

log = logging.getLogger(__name__)

# terminal step ids
EMIT, DUP, REJECT, TRIVIAL = "emit", "dup", "reject", "trivial"
PRUNE_S2_3, PRUNE_S3_1, PRUNE_S3_2, PRUNE_S4_2 = "prune-S2.3", "prune-S3.1", "prune-S3.2", "prune-S4.2"
TERMINAL_STEPS = frozenset({EMIT, DUP, REJECT, TRIVIAL, PRUNE_S2_3, PRUNE_S3_1, PRUNE_S3_2, PRUNE_S4_2})


@dataclass(frozen=True)
class SearchState:
    """A Stage-2 node. U/W sets are bitmasks over 1-based indices."""

    anchor: int
    undecided: int
    d: VertexSet
    t: int
    f: int

    def measure(self, n_w: int) -> int:
        return self.undecided.bit_count() + n_w - self.f.bit_count()


class Branch(NamedTuple):
    label: str
    declared: int
    state: SearchState


@dataclass
class Stage2Outcome:
    step: str
    kind: str  # "branch", "stage3" or "prune"
    children: list[Branch] = field(default_factory=list)

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(b.declared for b in self.children)


@dataclass
class TreeStats:
    nodes: int = 0
    leaves: int = 0
    solutions_emitted: int = 0
    duplicates: int = 0
    max_depth: int = 0
    step_counts: dict[str, int] = field(default_factory=dict)
    measure_violations: int = 0

    def bump(self, step: str) -> None:
        self.step_counts[step] = self.step_counts.get(step, 0) + 1


@dataclass(frozen=True)
class TraceRecord:
    depth: int
    step: str
    mu: int
    label: str
    anchor_right: int | None = None

    def line(self) -> str:
        return f"{self.depth} {self.step} {self.mu} {self.label}"


@dataclass
class EnumOptions:
    trace: bool = False
    fallback_n: int = 4
    keep_witnesses: bool = False


@dataclass
class EnumerationResult:
    solutions: SolutionSet
    stats: TreeStats
    duplicates_discarded: int
    trace: list[TraceRecord] = field(default_factory=list)
    witnesses: dict[VertexSet, tuple[tuple[Interval, int], ...]] = field(default_factory=dict)


def _mask_of(idx: int) -> int:
    return 1 << (idx - 1)


def stage1_seed(g: ConvexBipartiteGraph) -> list[SearchState]:
    """One state per neighbour of w1: that vertex selected, the rest discarded."""
    n1 = g.w_masks[0]
    if not n1:
        raise ValueError("w1 has no neighbours; graph is not connected")
    all_u = (1 << g.n_u) - 1
    rest = all_u & ~n1
    return [
        SearchState(anchor=u, undecided=rest, d=VertexSet(_mask_of(u), 0), t=n1 & ~_mask_of(u), f=0)
        for u in iter_bits(n1)
    ]


def stage2_expand(state: SearchState, g: ConvexBipartiteGraph) -> Stage2Outcome:
    """Apply the first Stage-2 rule that fires on ``state``."""
    iv = g.intervals
    u = state.anchor
    iu = iv[u - 1]
    r = iu.right

    # Step 1: undecided vertices ending no later than the anchor are nested in it.
    for i in iter_bits(state.undecided):
        if iv[i - 1].right <= r:
            m = _mask_of(i)
            child = SearchState(u, state.undecided & ~m, state.d, state.t | m, state.f)
            return Stage2Outcome("S2.1", "branch", [Branch(f"u{i}", 1, child)])

    # Step 2
    if r == g.n_w:
        return Stage2Outcome("S2.2", "stage3")

    # N(r): undecided neighbours of w_r; all of them reach past r by now.
    nr = [i for i in iter_bits(state.undecided) if iv[i - 1].left <= r]

    # Step 3
    if not nr:
        return Stage2Outcome(PRUNE_S2_3, "prune")

    und, d, t, f = state.undecided, state.d, state.t, state.f

    # Step 4
    if len(nr) == 1:
        j = nr[0]
        m = _mask_of(j)
        child = SearchState(j, und & ~m, VertexSet(d.u | m, d.w), t, f)
        return Stage2Outcome("S2.4", "branch", [Branch(f"u{j}", 1, child)])

    # Step 5
    if len(nr) == 2:
        a, b = nr
        j, k = (a, b) if (iv[a - 1].right, -a) >= (iv[b - 1].right, -b) else (b, a)
        ij, ik = iv[j - 1], iv[k - 1]
        mj, mk = _mask_of(j), _mask_of(k)
        rest = und & ~(mj | mk)
        sel_j = SearchState(j, rest, VertexSet(d.u | mj, d.w), t | mk, f)
        sel_k = SearchState(k, rest, VertexSet(d.u | mk, d.w), t | mj, f)
        if ij.issubset(ik) or ik.issubset(ij):
            return Stage2Outcome("S2.5n", "branch", [Branch("i", 2, sel_j), Branch("ii", 2, sel_k)])
        both = SearchState(j, rest, VertexSet(d.u | mj | mk, d.w), t, f | (ij.mask & iu.mask))
        return Stage2Outcome(
            "S2.5x", "branch", [Branch("i", 2, sel_j), Branch("ii", 2, sel_k), Branch("iii", 3, both)]
        )

    # Step 6
    tdeg = len(nr)
    j = max(nr, key=lambda x: (iv[x - 1].right, -x))
    ij = iv[j - 1]
    mj = _mask_of(j)
    nr_mask = sum(_mask_of(x) for x in nr)
    rest = und & ~nr_mask
    forbid = f | (ij.mask & iu.mask)
    children = [Branch("i", tdeg, SearchState(j, rest, VertexSet(d.u | mj, d.w), t | (nr_mask & ~mj), f))]
    for x in nr:
        if x == j or iv[x - 1].issubset(ij):
            continue
        mx = _mask_of(x)
        sel = VertexSet(d.u | mj | mx, d.w)
        children.append(Branch(f"ii:u{x}", tdeg + 1, SearchState(j, rest, sel, t | (nr_mask & ~(mj | mx)), forbid)))
    children.append(Branch("iii", 1, SearchState(u, und & ~mj, d, t | mj, f)))
    return Stage2Outcome(f"S2.6/{tdeg}", "branch", children)


def stage3_build_constraints(
    d: VertexSet, t: int, f: int, g: ConvexBipartiteGraph
) -> list[Interval] | None:
    """Constraint intervals J(T, D) for Stage 4, or None when the partial solution is dead.

    ``f`` is accepted for interface symmetry; Stage 3 does not consult it.
    """
    iv = g.intervals
    if d.w:
        raise ValueError("Stage 3 expects no W vertices in D yet")
    du = d.u_indices
    if not du:
        raise ValueError("Stage 3 expects D ∩ U to be nonempty")
    constraints = [iv[i - 1] for i in iter_bits(t)]

    # Step 1
    for a in du:
        for b in du:
            if a != b and iv[a - 1].issubset(iv[b - 1]):
                return None

    # Step 2: nested-free, so sorting by right endpoint also sorts by left.
    rem = sorted((iv[i - 1] for i in du), key=lambda x: x.right)
    while rem:
        ii = rem[0]
        r = ii.right
        if len(rem) == 1:
            return constraints
        nbrs = [x for x in rem if x.left <= r]
        deg = len(nbrs)
        if deg > 3:
            return None
        if deg == 2:
            other = nbrs[1]
            constraints.append(Interval(other.left, r))
            rem.pop(0)
        elif deg == 3:
            ik, ij = nbrs[1], nbrs[2]
            lo, hi = ik.left, min(ii.right, ij.left - 1)
            lo2, hi2 = max(ij.left, ii.right + 1), ik.right
            if lo > hi or lo2 > hi2:
                return None
            constraints.append(Interval(lo, hi))
            constraints.append(Interval(lo2, hi2))
            rem = [x for x in rem if x is not ii and x is not ik]
        else:
            log.warning("stage 3: degree %d at w%d with %d intervals left; pruning", deg, r, len(rem))
            return None
    return constraints


def _pick_interval(constraints: list[Interval]) -> Interval:
    return min(constraints, key=lambda x: (x.right, len(x), x.left))


def _stage4_children(
    available: int, constraints: list[Interval], f: int
) -> tuple[Interval, list[int]]:
    ji = _pick_interval(constraints)
    return ji, [w for w in iter_bits(ji.mask & available & ~f)]


def stage4_select(
    available: int, constraints: list[Interval], f: int, d: VertexSet, g: ConvexBipartiteGraph
) -> Iterator[VertexSet]:
    """Every completion of ``d`` picking one vertex from each constraint interval.

    Yields candidates for the minimality gate; it does not apply it.
    """
    if not constraints:
        yield d
        return
    ji, cands = _stage4_children(available, constraints, f)
    for w in cands:
        rest = [c for c in constraints if w not in c]
        yield from stage4_select(available & ~ji.mask, rest, f, VertexSet(d.u, d.w | _mask_of(w)), g)


def finalize(d: VertexSet, g: ConvexBipartiteGraph) -> bool:
    return bool(d) and is_minimal_cds(g, d)


class _Stage3Node(NamedTuple):
    d: VertexSet
    t: int
    f: int


class _Stage4Node(NamedTuple):
    d: VertexSet
    constraints: tuple[Interval, ...]
    available: int
    f: int
    chosen: tuple[tuple[Interval, int], ...]


class _Run:
    def __init__(self, g: ConvexBipartiteGraph, opts: EnumOptions):
        self.g = g
        self.opts = opts
        self.stats = TreeStats()
        self.trace: list[TraceRecord] = []
        self.found: dict[VertexSet, tuple[tuple[Interval, int], ...]] = {}

    def _mu(self, node: object) -> int:
        g = self.g
        if isinstance(node, SearchState):
            return node.measure(g.n_w)
        if isinstance(node, _Stage3Node):
            return g.n_w - node.f.bit_count()
        if isinstance(node, _Stage4Node):
            return (node.available & ~node.f).bit_count()
        return g.n  # root

    def _record(self, depth: int, step: str, mu: int, label: str, anchor_right: int | None) -> None:
        st = self.stats
        st.nodes += 1
        st.bump(step)
        st.max_depth = max(st.max_depth, depth)
        if step in TERMINAL_STEPS:
            st.leaves += 1
        if self.opts.trace:
            self.trace.append(TraceRecord(depth, step, mu, label, anchor_right))

    def run(self) -> None:
        g = self.g
        seeds = stage1_seed(g)
        k = len(seeds)
        root_mu = g.n
        self._record(0, f"S1/{k}", root_mu, "-", None)
        # stack entries: (node, depth, label, parent_mu, declared)
        stack: list[tuple[object, int, str, int, int]] = [
            (s, 1, f"u{s.anchor}", root_mu, k) for s in reversed(seeds)
        ]
        iv = g.intervals
        while stack:
            node, depth, label, parent_mu, declared = stack.pop()
            mu = self._mu(node)
            if parent_mu - mu < declared:
                self.stats.measure_violations += 1
                log.error("measure decreased by %d < %d at %s", parent_mu - mu, declared, label)
            if isinstance(node, SearchState):
                out = stage2_expand(node, g)
                self._record(depth, out.step, mu, label, iv[node.anchor - 1].right)
                if out.kind == "stage3":
                    stack.append((_Stage3Node(node.d, node.t, node.f), depth + 1, "-", mu, 0))
                elif out.kind == "branch":
                    for br in reversed(out.children):
                        stack.append((br.state, depth + 1, br.label, mu, br.declared))
            elif isinstance(node, _Stage3Node):
                cons = stage3_build_constraints(node.d, node.t, node.f, g)
                if cons is None:
                    # distinguish the nested-pair guard from the degree rules for the trace
                    step = PRUNE_S3_1 if _has_nested(g, node.d) else PRUNE_S3_2
                    self._record(depth, step, mu, label, None)
                    continue
                self._record(depth, "S3", mu, label, None)
                all_w = (1 << g.n_w) - 1
                stack.append((_Stage4Node(node.d, tuple(cons), all_w, node.f, ()), depth + 1, "-", mu, 0))
            else:
                assert isinstance(node, _Stage4Node)
                if not node.constraints:
                    self._finalize(node, depth, mu, label)
                    continue
                ji, cands = _stage4_children(node.available, list(node.constraints), node.f)
                if not cands:
                    self._record(depth, PRUNE_S4_2, mu, label, None)
                    continue
                t = len(cands)
                self._record(depth, f"S4/{t}", mu, label, None)
                avail = node.available & ~ji.mask
                for w in reversed(cands):
                    rest = tuple(c for c in node.constraints if w not in c)
                    d2 = VertexSet(node.d.u, node.d.w | _mask_of(w))
                    child = _Stage4Node(d2, rest, avail, node.f, node.chosen + ((ji, w),))
                    stack.append((child, depth + 1, f"w{w}", mu, t))

    def _finalize(self, node: _Stage4Node, depth: int, mu: int, label: str) -> None:
        d = node.d
        if not finalize(d, self.g):
            self._record(depth, REJECT, mu, label, None)
        elif d in self.found:
            self.stats.duplicates += 1
            self._record(depth, DUP, mu, label, None)
        else:
            self.found[d] = node.chosen
            self.stats.solutions_emitted += 1
            self._record(depth, EMIT, mu, label, None)


def _has_nested(g: ConvexBipartiteGraph, d: VertexSet) -> bool:
    du = d.u_indices
    iv = g.intervals
    return any(a != b and iv[a - 1].issubset(iv[b - 1]) for a in du for b in du)


def _trivial(g: ConvexBipartiteGraph, sols: SolutionSet, opts: EnumOptions) -> EnumerationResult:
    st = TreeStats(nodes=1, leaves=max(1, sols.count), solutions_emitted=sols.count, step_counts={TRIVIAL: 1})
    trace = [TraceRecord(0, TRIVIAL, g.n, "-")] if opts.trace else []
    return EnumerationResult(sols, st, 0, trace)


def enumerate_mcds(g: ConvexBipartiteGraph, opts: EnumOptions | None = None) -> EnumerationResult:
    """All minimal connected dominating sets of a convex bipartite graph."""
    opts = opts or EnumOptions()
    rep = validate(g)
    if rep.interval_errors:
        raise ValueError(f"invalid graph: {rep.interval_errors}")
    if not rep.connected:
        return _trivial(g, SolutionSet(), opts)
    if rep.is_star:
        return _trivial(g, SolutionSet([VertexSet.of([rep.star_center])]), opts)
    if g.n_u <= 1 or g.n_w <= 1 or g.n <= opts.fallback_n:
        return _trivial(g, enumerate_mcds_bruteforce(g), opts)
    run = _Run(g, opts)
    run.run()
    sols = SolutionSet(run.found)
    return EnumerationResult(
        sols,
        run.stats,
        run.stats.duplicates,
        run.trace,
        dict(run.found) if opts.keep_witnesses else {},
    )
