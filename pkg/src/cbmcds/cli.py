"""Command-line driver.

Exit codes: 0 success / agreement, 1 verified disagreement or failed check,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis
from .enumerator import EnumOptions, TreeStats, enumerate_mcds
from .formats import GraphFormatError, format_solutions, parse_graph, serialize_graph
from .generators import LowerBoundParams, RandomParams, lower_bound_graph, random_convex_graph
from .graph_core import GraphError, validate
from .oracle import DEFAULT_MAX_N, enumerate_mcds_bruteforce


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_graph(text)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _print_stats(st: TreeStats, out) -> None:
    print(f"nodes {st.nodes}", file=out)
    print(f"leaves {st.leaves}", file=out)
    print(f"solutions_emitted {st.solutions_emitted}", file=out)
    print(f"duplicates_discarded {st.duplicates}", file=out)
    print(f"max_depth {st.max_depth}", file=out)
    print(f"measure_violations {st.measure_violations}", file=out)
    for step in sorted(st.step_counts):
        print(f"step {step} {st.step_counts[step]}", file=out)


def cmd_enumerate(a) -> int:
    g = _read_graph(a.file)
    res = enumerate_mcds(g, EnumOptions(trace=bool(a.trace)))
    sys.stdout.write(format_solutions(res.solutions))
    if a.trace:
        Path(a.trace).write_text(analysis.format_trace(res.trace), encoding="utf-8")
    if a.stats:
        _print_stats(res.stats, sys.stderr)
    return 0


def cmd_oracle(a) -> int:
    g = _read_graph(a.file)
    sys.stdout.write(format_solutions(enumerate_mcds_bruteforce(g, max_n=a.max_n)))
    return 0


def cmd_verify(a) -> int:
    g = _read_graph(a.file)
    fast = enumerate_mcds(g).solutions
    slow = enumerate_mcds_bruteforce(g, max_n=a.max_n)
    same = fast == slow
    verdict = "agree" if same else "DISAGREE"
    print(f"enumerator {fast.count} oracle {slow.count} {verdict}")
    for d in sorted(slow.as_frozenset() - fast.as_frozenset(), key=lambda d: d.sort_key()):
        print("- " + " ".join(d.labels()))
    for d in sorted(fast.as_frozenset() - slow.as_frozenset(), key=lambda d: d.sort_key()):
        print("+ " + " ".join(d.labels()))
    return 0 if same else 1


def cmd_gen(a) -> int:
    if a.kind == "lower":
        if a.k is None:
            raise _UsageError("gen lower needs --k")
        g = lower_bound_graph(LowerBoundParams(a.k))
        note = f"lower-bound family k={a.k}"
    else:
        if None in (a.nu, a.nw, a.seed):
            raise _UsageError("gen random needs --nu, --nw and --seed")
        g = random_convex_graph(RandomParams(a.nu, a.nw, a.seed, style=a.style))
        note = f"random nU={a.nu} nW={a.nw} seed={a.seed} style={a.style}"
    _write(a.output, serialize_graph(g, comment=note))
    return 0


def cmd_check(a) -> int:
    g = _read_graph(a.file)
    rep = validate(g)
    print(f"nU {g.n_u} nW {g.n_w} n {g.n} m {g.m}")
    print(f"connected {'yes' if rep.connected else 'no'}")
    print(f"star {'yes (center ' + rep.star_center.label + ')' if rep.is_star else 'no'}")
    iso = rep.isolated_vertices
    print(f"isolated {' '.join(iso.labels()) if iso else '-'}")
    for i, msg in rep.interval_errors:
        print(f"interval-error u{i} {msg}")
    return 0 if rep.ok else 1


def cmd_alpha(a) -> int:
    try:
        vec = [int(x) for x in a.vector.split(",")]
        value = analysis.branching_number(vec)
    except ValueError as e:
        raise _UsageError(f"bad --vector: {e}") from None
    print(f"{value:.12f}")
    return 0


def cmd_stats(a) -> int:
    trace = analysis.parse_trace(Path(a.trace).read_text(encoding="utf-8"))
    st = analysis.stats_from_trace(trace)
    _print_stats(st, sys.stdout)
    grows_ok = analysis.growth_check(st, a.n)
    print(f"growth leaves {st.leaves} bound {analysis.growth_bound(a.n):.6g} {'ok' if grows_ok else 'EXCEEDED'}")
    mrep = analysis.verify_measure_trace(trace)
    print(f"measure edges {mrep.edges} violations {len(mrep.violations)}")
    for v in mrep.violations:
        print(f"violation record {v.index} under {v.parent_step} branch {v.label}: "
              f"dropped {v.actual}, declared {v.declared}")
    return 0 if grows_ok and mrep.ok else 1


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cbmcds", description="Minimal connected dominating sets of convex bipartite graphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", help="branching enumeration")
    s.add_argument("file")
    s.add_argument("--trace", metavar="OUT", help="write the search-tree trace here")
    s.add_argument("--stats", action="store_true", help="print tree statistics to stderr")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("oracle", help="brute-force enumeration")
    s.add_argument("file")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="compare enumerator against oracle")
    s.add_argument("file")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="write an instance")
    s.add_argument("kind", choices=["lower", "random"])
    s.add_argument("--k", type=int)
    s.add_argument("--nu", type=int)
    s.add_argument("--nw", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--style", choices=["geometric", "short"], default="geometric")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", help="validate a graph file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("alpha", help="branching number of a vector")
    s.add_argument("--vector", required=True)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("stats", help="summarise a trace file")
    s.add_argument("--trace", required=True)
    s.add_argument("-n", type=int, required=True, help="vertex count of the traced instance")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, GraphError, analysis.TraceParseError, _UsageError, ValueError, OSError) as e:
        print(f"cbmcds {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
