"""Text formats: the ``cbg 1`` graph file and the solution listing."""
from __future__ import annotations

from typing import Iterable

from .graph_core import ConvexBipartiteGraph, Interval, VertexRef, VertexSet

HEADER = "cbg 1"


class GraphFormatError(ValueError):
    """Parse failure; ``problems`` holds (code, line number, message) triples."""

    def __init__(self, problems: list[tuple[str, int, str]]):
        self.problems = problems
        super().__init__("; ".join(f"line {ln}: [{code}] {msg}" for code, ln, msg in problems))

    @property
    def codes(self) -> list[str]:
        return [c for c, _, _ in self.problems]


def parse_graph(text: str) -> ConvexBipartiteGraph:
    lines = [
        (no, raw.strip())
        for no, raw in enumerate(text.split("\n"), 1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    problems: list[tuple[str, int, str]] = []
    if not lines or lines[0][1].split() != HEADER.split():
        ln = lines[0][0] if lines else 1
        raise GraphFormatError([("bad-header", ln, f"expected {HEADER!r}")])

    def ints(no: int, s: str, want: int) -> list[int] | None:
        parts = s.split()
        if len(parts) != want:
            problems.append(("bad-field", no, f"expected {want} integers, got {len(parts)} fields"))
            return None
        try:
            return [int(p) for p in parts]
        except ValueError:
            problems.append(("bad-field", no, f"non-integer field in {s!r}"))
            return None

    if len(lines) < 2:
        raise GraphFormatError([("bad-count", lines[0][0], "missing size line")])
    size_no, size_line = lines[1]
    sizes = ints(size_no, size_line, 2)
    if sizes is None:
        raise GraphFormatError(problems)
    n_u, n_w = sizes
    if n_u < 1 or n_w < 1:
        raise GraphFormatError([("bad-field", size_no, "nU and nW must be positive")])
    body = lines[2:]
    if len(body) != n_u:
        problems.append(("bad-count", size_no, f"expected {n_u} interval lines, found {len(body)}"))
    intervals = []
    for no, s in body[:n_u]:
        lr = ints(no, s, 2)
        if lr is None:
            continue
        l, r = lr
        if not 1 <= l <= r <= n_w:
            problems.append(("bad-interval", no, f"need 1 <= l <= r <= {n_w}, got l={l} r={r}"))
            continue
        intervals.append(Interval(l, r))
    if problems:
        raise GraphFormatError(problems)
    return ConvexBipartiteGraph(n_u, n_w, tuple(intervals))


def serialize_graph(g: ConvexBipartiteGraph, comment: str | None = None) -> str:
    out = [HEADER]
    if comment:
        out += [f"# {c}" for c in comment.splitlines()]
    out.append(f"{g.n_u} {g.n_w}")
    out += [f"{iv.left} {iv.right}" for iv in g.intervals]
    return "\n".join(out) + "\n"


def format_solutions(sols: Iterable[VertexSet]) -> str:
    ordered = sorted(set(sols), key=VertexSet.sort_key)
    lines = [" ".join(d.labels()) for d in ordered]
    lines.append(f"count {len(ordered)}")
    return "\n".join(lines) + "\n"


def parse_solutions(text: str) -> list[VertexSet]:
    rows = [ln for ln in text.split("\n") if ln.strip()]
    if not rows or not rows[-1].startswith("count "):
        raise ValueError("solution listing must end with a 'count N' line")
    count = int(rows[-1].split()[1])
    sols = [VertexSet.of(VertexRef.parse(t) for t in ln.split()) for ln in rows[:-1]]
    if len(sols) != count:
        raise ValueError(f"count line says {count}, listing has {len(sols)}")
    return sols
