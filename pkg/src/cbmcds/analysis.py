"""Branching vectors, branching numbers, and checks on recorded search trees."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .enumerator import TERMINAL_STEPS, TraceRecord, TreeStats

GROWTH_BASE = 1.7254


class TraceParseError(ValueError):
    pass


@dataclass(frozen=True)
class BranchingVector:
    decreases: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "decreases", tuple(int(c) for c in self.decreases))
        if not self.decreases or min(self.decreases) < 1:
            raise ValueError(f"branching vector needs positive entries: {self.decreases}")

    def __iter__(self):
        return iter(self.decreases)

    def __len__(self) -> int:
        return len(self.decreases)


def _as_vector(v: BranchingVector | Sequence[int]) -> BranchingVector:
    return v if isinstance(v, BranchingVector) else BranchingVector(tuple(v))


def characteristic(v: BranchingVector | Sequence[int], x: float) -> float:
    """p(x) = x^c - sum_i x^(c - c_i) with c = max c_i."""
    cs = _as_vector(v).decreases
    c = max(cs)
    return x**c - sum(x ** (c - ci) for ci in cs)


def branching_number(v: BranchingVector | Sequence[int], tol: float = 1e-12) -> float:
    """Unique root >= 1 of the characteristic polynomial, by bisection."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    vec = _as_vector(v)
    lo, hi = 1.0, 2.0
    while characteristic(vec, hi) <= 0:
        hi *= 2
    while True:
        mid = 0.5 * (lo + hi)
        pm = characteristic(vec, mid)
        if mid in (lo, hi) or (hi - lo <= tol and abs(pm) <= tol):
            return mid
        if pm > 0:
            hi = mid
        else:
            lo = mid


def step5_vectors() -> list[BranchingVector]:
    return [BranchingVector((2, 2)), BranchingVector((2, 2, 3))]


def step6_vector(t: int) -> BranchingVector:
    """Select-j, select-j-and-x for each of t-1 others, discard-j."""
    if t < 3:
        raise ValueError(f"step-6 vectors need t >= 3, got {t}")
    return BranchingVector((t,) + (t + 1,) * (t - 1) + (1,))


def stage4_vector(t: int) -> BranchingVector:
    if t < 1:
        raise ValueError("t must be positive")
    return BranchingVector((t,) * t)


def algorithm_vectors(t_max: int = 12) -> list[BranchingVector]:
    """Every branching vector the enumerator can declare, for degrees up to ``t_max``."""
    out = step5_vectors()
    out += [step6_vector(t) for t in range(3, t_max + 1)]
    out += [stage4_vector(t) for t in range(2, t_max + 1)]
    return out


# --- traces -------------------------------------------------------------------

def format_trace(records: Iterable[TraceRecord]) -> str:
    return "".join(r.line() + "\n" for r in records)


def parse_trace(text: str) -> list[TraceRecord]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise TraceParseError(f"line {no}: expected 4 fields, got {len(parts)}")
        depth, step, mu, label = parts
        try:
            out.append(TraceRecord(int(depth), step, int(mu), label))
        except ValueError:
            raise TraceParseError(f"line {no}: depth and measure must be integers") from None
    return out


def declared_decrease(step: str, label: str) -> int:
    """Measure drop promised by the rule ``step`` along the branch ``label``."""
    head, _, arg = step.partition("/")
    if head in ("S2.2", "S3"):
        return 0
    if head in ("S2.1", "S2.4"):
        return 1
    if head == "S2.5n":
        return 2
    if head == "S2.5x":
        return 3 if label == "iii" else 2
    if head in ("S1", "S4", "S2.6"):
        try:
            t = int(arg)
        except ValueError:
            raise TraceParseError(f"step {step!r} lacks its degree") from None
        if head != "S2.6":
            return t
        if label == "i":
            return t
        if label.startswith("ii:"):
            return t + 1
        if label == "iii":
            return 1
        raise TraceParseError(f"unknown branch {label!r} under {step}")
    raise TraceParseError(f"no declared vector for step {step!r}")


@dataclass
class MeasureViolation:
    index: int
    parent_step: str
    label: str
    actual: int
    declared: int


@dataclass
class MeasureReport:
    edges: int = 0
    violations: list[MeasureViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_measure_trace(trace: Sequence[TraceRecord] | str) -> MeasureReport:
    """Check every tree edge drops the measure by at least its declared amount.

    Records are in depth-first preorder, so a node's parent is the latest
    record one level up.
    """
    records = parse_trace(trace) if isinstance(trace, str) else list(trace)
    rep = MeasureReport()
    path: list[TraceRecord] = []
    for idx, rec in enumerate(records):
        if rec.depth < 0 or rec.depth > len(path):
            raise TraceParseError(f"record {idx}: depth {rec.depth} does not follow the tree")
        del path[rec.depth:]
        if path:
            parent = path[-1]
            if parent.step in TERMINAL_STEPS:
                raise TraceParseError(f"record {idx}: child of terminal step {parent.step}")
            declared = declared_decrease(parent.step, rec.label)
            actual = parent.mu - rec.mu
            rep.edges += 1
            if actual < declared:
                rep.violations.append(MeasureViolation(idx, parent.step, rec.label, actual, declared))
        elif rec.depth != 0:
            raise TraceParseError(f"record {idx}: missing parent")
        path.append(rec)
    return rep


def stats_from_trace(trace: Sequence[TraceRecord]) -> TreeStats:
    st = TreeStats()
    for rec in trace:
        st.nodes += 1
        st.bump(rec.step)
        st.max_depth = max(st.max_depth, rec.depth)
        if rec.step in TERMINAL_STEPS:
            st.leaves += 1
        if rec.step == "emit":
            st.solutions_emitted += 1
        elif rec.step == "dup":
            st.duplicates += 1
    st.measure_violations = len(verify_measure_trace(trace).violations)
    return st


def growth_bound(n: int) -> float:
    return n * n * GROWTH_BASE**n


def growth_check(stats: TreeStats, n: int) -> bool:
    """Leaves within n^2 * 1.7254^n; the square stands in for the hidden polynomial."""
    return stats.leaves <= growth_bound(n)
