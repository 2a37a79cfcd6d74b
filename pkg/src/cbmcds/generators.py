"""Instance factories: the 3^k lower-bound family and seeded random convex graphs."""
from __future__ import annotations

from dataclasses import dataclass

from .graph_core import ConvexBipartiteGraph, GraphError, validate

_MASK64 = (1 << 64) - 1


class GenerationError(GraphError):
    pass


@dataclass(frozen=True)
class LowerBoundParams:
    k: int

    def __post_init__(self) -> None:
        if self.k < 3 or self.k % 2 == 0:
            raise ValueError(f"lower-bound family needs odd k >= 3, got k={self.k}")


@dataclass(frozen=True)
class RandomParams:
    n_u: int
    n_w: int
    seed: int
    max_retries: int = 1000
    style: str = "geometric"

    def __post_init__(self) -> None:
        if self.style not in ("geometric", "short"):
            raise ValueError(f"unknown style {self.style!r}")
        if self.n_u < 2 or self.n_w < 2:
            raise ValueError("random instances need nU >= 2 and nW >= 2")
        if self.max_retries < 1:
            raise ValueError("max_retries must be positive")


def lower_bound_graph(p: LowerBoundParams | int) -> ConvexBipartiteGraph:
    """Chain u - T1 - T2 - ... - Tk - v of independent triples, realised as intervals.

    W holds the odd triples T1, T3, ..., Tk left to right; U holds u, then the
    even triples, then v.  Vertex x_{2j} is adjacent to T_{2j-1} and T_{2j+1}.
    """
    if isinstance(p, int):
        p = LowerBoundParams(p)
    k = p.k
    n_w = 3 * (k + 1) // 2
    pairs = [(1, 3)]
    for j in range(1, (k - 1) // 2 + 1):
        pairs += [(3 * j - 2, 3 * j + 3)] * 3
    pairs.append((n_w - 2, n_w))
    return ConvexBipartiteGraph.from_pairs(n_w, pairs)


def lower_bound_labels(k: int) -> dict[str, str]:
    """Map paper-style names (u, v, x1, y2, ...) to vertex labels of ``lower_bound_graph(k)``."""
    LowerBoundParams(k)
    names = {"u": "u1"}
    for i in range(1, k + 1):
        for off, letter in enumerate("xyz"):
            if i % 2:
                names[f"{letter}{i}"] = f"w{3 * (i - 1) // 2 + off + 1}"
            else:
                names[f"{letter}{i}"] = f"u{1 + 3 * (i // 2 - 1) + off + 1}"
    names["v"] = f"u{2 + 3 * (k - 1) // 2}"
    return names


class SplitMix64:
    """splitmix64 (Steele, Lea, Flood 2014); tiny and easy to reproduce in any language."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num


def _extend_odds(n_u: int, n_w: int) -> tuple[int, int]:
    """Per-step probability of growing an interval; longer when W outnumbers U."""
    num, den = max(n_w - n_u, 0) + n_w, 2 * n_w
    return max(num, den // 2), den


def random_convex_graph(p: RandomParams) -> ConvexBipartiteGraph:
    """Connected convex bipartite graph drawn from ``p.seed``.

    ``geometric``: uniform left endpoint, geometric length capped at the end of W.
    ``short``: length 2 or 3, placed uniformly where it fits; gives many
    overlapping, non-nested intervals and so deeper branching.
    Draws are repeated until the graph is connected.
    """
    rng = SplitMix64(p.seed)
    num, den = _extend_odds(p.n_u, p.n_w)
    for _ in range(p.max_retries):
        pairs = []
        for _ in range(p.n_u):
            if p.style == "short":
                length = min(2 + rng.below(2), p.n_w)
                left = 1 + rng.below(p.n_w - length + 1)
                pairs.append((left, left + length - 1))
                continue
            left = 1 + rng.below(p.n_w)
            right = left
            while right < p.n_w and rng.chance(num, den):
                right += 1
            pairs.append((left, right))
        g = ConvexBipartiteGraph.from_pairs(p.n_w, pairs)
        if validate(g).connected:
            return g
    raise GenerationError(
        f"no connected instance for nU={p.n_u}, nW={p.n_w}, seed={p.seed} after {p.max_retries} draws"
    )
