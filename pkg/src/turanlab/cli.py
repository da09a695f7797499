"""Command-line entry point.

Every run produces a JSON report with a manifest (argv, seed, digests)
so any seeded command can be replayed bit-for-bit.  Exit codes: 0 when a
witness or value was produced, 1 for a clean not-found outcome, 2 for
usage or precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .constructions import (alternating_cycle_bipartition, blowup, named_graph,
                            pp_incidence, random_graph, random_kss_free_dense)
from .cycles import (alternating_path_stats, find_induced_alternating_cycle,
                     find_induced_cube, hom_cycle_count,
                     nondegenerate_cycle_count)
from .embedder import bounded_degree_pipeline, embed_tree_c4free
from .errors import (AllEdgesBad, BadSpec, CostGuard, HypothesisFailed,
                     InequalityFails, MalformedGraph6, NoIndependentSets,
                     NotPartite, NotPrimePower, NoViableCandidate,
                     PatternPresent, PreconditionFailed, RetriesExhausted,
                     StuckBelowUniformity, TooLarge, TooSparse,
                     TrialsExhausted, TuranLabError, WTooSmall)
from .graphs import (Bipartition, Graph, PatternSpec, graph_from_graph6,
                     graph_to_graph6, two_colour)
from .hypergraphs import (SpreadParams, UniformHypergraph,
                          clean_to_superspread, heavy_edges, is_superspread,
                          set_degree)
from .report import (Report, RunManifest, digest_file, now_stamp,
                     write_report)
from .search import find_kss
from .solver import ConstraintSet, extremal_search, ratio_table, table_to_csv
from .witness import Witness, validate_witness

_NOT_FOUND_ERRORS = (TrialsExhausted, RetriesExhausted, NoViableCandidate,
                     TooSparse, StuckBelowUniformity, NoIndependentSets,
                     AllEdgesBad, InequalityFails, PatternPresent)
_USAGE_ERRORS = (PreconditionFailed, BadSpec, NotPartite, NotPrimePower,
                 WTooSmall, HypothesisFailed, TooLarge, CostGuard,
                 MalformedGraph6)


def _read_graph(path: str) -> Graph:
    with open(path, encoding="ascii") as f:
        return graph_from_graph6(f.read())


def _parse_override(text: str) -> tuple[str, Any]:
    if "=" not in text:
        raise BadSpec(f"override {text!r} is not key=value")
    key, raw = text.split("=", 1)
    if "/" in raw:
        num, den = raw.split("/", 1)
        return key, Fraction(int(num), int(den))
    try:
        return key, int(raw)
    except ValueError:
        return key, raw


def _bipartition_of(graph: Graph) -> Bipartition:
    side = two_colour(graph)
    if side is None:
        raise NotPartite("graph is not bipartite")
    return Bipartition(graph, side)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="turanlab",
        description="Verified workbench for induced Turan-type problems "
                    "in biclique-free hosts.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0,
                       help="PRNG seed for every randomized step (default 0)")
        p.add_argument("--out", help="report path (default stdout)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker count; execution is deterministic and "
                            "byte-identical at any value")
        p.add_argument("--override", action="append", default=[],
                       metavar="KEY=VALUE",
                       help="parameter override, repeatable; fractions as a/b")

    p = sub.add_parser("construct", help="build a named graph family")
    p.add_argument("--family", required=True,
                   choices=["path", "cycle", "complete", "complete_bipartite",
                            "hypercube", "empty", "tree_from_pruefer",
                            "pp_incidence", "alternating_cycle", "blowup",
                            "random", "kss_free_dense"])
    p.add_argument("--params", type=int, nargs="*", default=[],
                   help="integer parameters of the family")
    p.add_argument("--graph", help="base graph (graph6 file) for blowup")
    p.add_argument("--p", type=float, help="edge probability for random")
    common(p)

    p = sub.add_parser("solve", help="exact extremal edge count at small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--induced", action="append", default=[],
                   help="graph6 file of an induced-forbidden pattern")
    p.add_argument("--subgraph", action="append", default=[],
                   help="graph6 file of a subgraph-forbidden pattern")
    p.add_argument("--kss", type=int,
                   help="forbid the complete bipartite K_{s,s} subgraph")
    common(p)

    p = sub.add_parser("ratio", help="induced-variant vs classical value table")
    p.add_argument("--pattern", required=True, help="graph6 file")
    p.add_argument("--s", type=int, nargs="+", required=True)
    p.add_argument("--n", type=int, nargs="+", required=True)
    common(p)

    p = sub.add_parser("embed", help="induced tree embedding in a C4-free host")
    p.add_argument("--host", required=True, help="graph6 file")
    p.add_argument("--tree", required=True, help="graph6 file")
    common(p)

    p = sub.add_parser("pipeline",
                       help="DRC, rich-set and greedy-embedding chain")
    p.add_argument("--graph", required=True, help="graph6 host file")
    p.add_argument("--pattern", required=True, help="graph6 bipartite pattern")
    p.add_argument("--s", type=int, required=True, help="biclique bound")
    p.add_argument("--mode", choices=["i", "ii"], default="i")
    common(p)

    p = sub.add_parser("cycles", help="even-cycle counting and finders")
    p.add_argument("--action", required=True,
                   choices=["count", "stats", "find-c2k", "find-cube"])
    p.add_argument("--graph", required=True, help="graph6 file")
    p.add_argument("--k", type=int, default=2, help="half cycle length")
    p.add_argument("--s", type=int, default=2, help="biclique bound")
    p.add_argument("--u", type=int, help="first endpoint for stats")
    p.add_argument("--v", type=int, help="second endpoint for stats")
    common(p)

    p = sub.add_parser("verify", help="re-validate a stored witness")
    p.add_argument("--graph", required=True, help="graph6 host file")
    p.add_argument("--witness", required=True, help="witness JSON file")
    p.add_argument("--pattern", help="graph6 pattern file (for InducedCopy)")
    common(p)

    p = sub.add_parser("hyper", help="uniform hypergraph operations")
    p.add_argument("--input", required=True, help="hypergraph JSON file")
    p.add_argument("--action", required=True,
                   choices=["degree", "heavy", "check", "clean"])
    p.add_argument("--set", default="",
                   help="comma-separated vertex set for degree")
    p.add_argument("--epsilon", help="heavy-edge fraction bound, as a/b")
    p.add_argument("--delta", help="heaviness ratio, as a/b")
    p.add_argument("--a", type=int, help="minimum uniformity for clean; "
                                         "defaults drive epsilon=(2a)^-2, "
                                         "delta=(2a)^(-2(a+1))/s, r=2a")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--r", type=int, help="starting uniformity (default 2a)")
    common(p)

    return top


def _fraction_arg(text: Optional[str]) -> Optional[Fraction]:
    if text is None:
        return None
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


def _run_construct(args, report: Report) -> int:
    fam = args.family
    if fam == "blowup":
        if args.graph is None or len(args.params) != 1:
            raise BadSpec("blowup needs --graph and --params T")
        base = _read_graph(args.graph)
        g, _ = blowup(base, args.params[0])
    elif fam == "random":
        if args.p is None or len(args.params) != 1:
            raise BadSpec("random needs --params N and --p")
        g = random_graph(args.params[0], args.p, args.seed)
    elif fam == "kss_free_dense":
        if len(args.params) != 2:
            raise BadSpec("kss_free_dense needs --params T S")
        g = random_kss_free_dense(args.params[0], args.params[1], args.seed)
    elif fam == "pp_incidence":
        g = pp_incidence(*args.params).graph
    elif fam == "alternating_cycle":
        g = alternating_cycle_bipartition(*args.params).graph
    elif fam == "tree_from_pruefer":
        g = named_graph(fam, args.params)
    else:
        g = named_graph(fam, *args.params)
    report.graphs["result"] = graph_to_graph6(g)
    report.counters["n"] = g.n
    report.counters["edges"] = g.edge_count()
    return 0


def _run_solve(args, report: Report) -> int:
    induced = tuple(_read_graph(p) for p in args.induced)
    subgraph = [_read_graph(p) for p in args.subgraph]
    if args.kss is not None:
        subgraph.append(named_graph("complete_bipartite", args.kss, args.kss))
    result = extremal_search(args.n, ConstraintSet(induced, tuple(subgraph)))
    report.counters["max_edges"] = result.max_edges
    report.counters["count_extremal"] = result.count_extremal
    report.counters.update(result.search_stats)
    for i, g6 in enumerate(result.witness_graphs):
        report.graphs[f"extremal_{i}"] = g6
    return 0


def _run_ratio(args, report: Report) -> int:
    pattern = _read_graph(args.pattern)
    spec = PatternSpec.from_graph(pattern)
    rows = ratio_table(spec, args.s, args.n)
    report.tables["ratio"] = table_to_csv(rows)
    report.counters["rows"] = len(rows)
    report.counters["sandwich_ok"] = int(all(r.sandwich_holds() for r in rows))
    return 0


def _run_embed(args, report: Report) -> int:
    host = _read_graph(args.host)
    tree = _read_graph(args.tree)
    witness = embed_tree_c4free(host, tree)
    report.add_witness(witness, graph_to_graph6(host), graph_to_graph6(tree))
    return 0 if witness.found else 1


def _run_pipeline(args, report: Report) -> int:
    host = _read_graph(args.graph)
    pattern = _read_graph(args.pattern)
    spec = PatternSpec.from_graph(pattern)
    overrides = dict(_parse_override(o) for o in args.override)
    witness = bounded_degree_pipeline(host, spec, args.s, args.mode,
                                      args.seed, overrides or None)
    host_g6 = graph_to_graph6(host)
    if witness.kind == "InducedCopy":
        report.add_witness(witness, host_g6, graph_to_graph6(pattern))
    else:
        report.add_witness(witness, host_g6)
    if not witness.found:
        report.counters["stage_failed"] = 1
        report.payload["stage"] = witness.data.get("stage", "")
        return 1
    return 0


def _run_cycles(args, report: Report) -> int:
    g = _read_graph(args.graph)
    g6 = graph_to_graph6(g)
    if args.action == "count":
        report.counters["hom"] = hom_cycle_count(g, args.k)
        nondeg, deg = nondegenerate_cycle_count(g, args.k)
        report.counters["nondegenerate"] = nondeg
        report.counters["degenerate"] = deg
        return 0
    if args.action == "stats":
        if args.u is None or args.v is None:
            raise BadSpec("stats needs --u and --v")
        st = alternating_path_stats(_bipartition_of(g), args.u, args.v, args.k)
        report.counters.update({"P": st.p, "A": st.a, "B": st.b})
        return 0
    if args.action == "find-c2k":
        witness = find_induced_alternating_cycle(
            _bipartition_of(g), args.k, args.s, seed=args.seed)
        report.add_witness(witness, g6)
        return 0 if witness.found else 1
    witness = find_induced_cube(g, args.s, seed=args.seed)
    if witness.kind == "InducedCopy":
        report.add_witness(witness, g6,
                           graph_to_graph6(named_graph("hypercube", 3)))
    else:
        report.add_witness(witness, g6)
    return 0 if witness.found else 1


def _run_verify(args, report: Report) -> int:
    host = _read_graph(args.graph)
    with open(args.witness, encoding="utf-8") as f:
        witness = Witness.from_json(json.load(f))
    pattern = _read_graph(args.pattern) if args.pattern else None
    ok = validate_witness(witness, host, pattern)
    report.counters["valid"] = int(ok)
    return 0 if ok else 1


def _run_hyper(args, report: Report) -> int:
    with open(args.input, encoding="utf-8") as f:
        h = UniformHypergraph.from_json(json.load(f))
    if args.action == "degree":
        verts = [int(x) for x in args.set.split(",") if x != ""]
        report.counters["degree"] = set_degree(h, verts)
        return 0
    if args.action == "heavy":
        delta = _fraction_arg(args.delta)
        if delta is None:
            raise BadSpec("heavy needs --delta")
        report.counters["heavy"] = len(heavy_edges(h, delta))
        report.counters["edges"] = h.edge_count()
        return 0
    eps = _fraction_arg(args.epsilon)
    delta = _fraction_arg(args.delta)
    if args.action == "check":
        if eps is None or delta is None:
            raise BadSpec("check needs --epsilon and --delta")
        ok = is_superspread(h, eps, delta)
        report.counters["superspread"] = int(ok)
        return 0 if ok else 1
    if args.a is None:
        raise BadSpec("clean needs --a")
    params = SpreadParams.defaults(args.a, args.s)
    if eps is not None or delta is not None or args.r is not None:
        params = SpreadParams(eps or params.epsilon, delta or params.delta,
                              args.a, args.r or params.r)
    cleaned = clean_to_superspread(h, params, args.seed,
                                   check_hypothesis=False)
    report.payload["hypergraph"] = cleaned.to_json()
    report.counters["edges"] = cleaned.edge_count()
    return 0


_RUNNERS = {
    "construct": _run_construct,
    "solve": _run_solve,
    "ratio": _run_ratio,
    "embed": _run_embed,
    "pipeline": _run_pipeline,
    "cycles": _run_cycles,
    "verify": _run_verify,
    "hyper": _run_hyper,
}

_FILE_FLAGS = ("graph", "pattern", "host", "tree", "witness", "input",
               "induced", "subgraph")


def dispatch(argv: list[str]) -> tuple[int, Report]:
    """Run one command; returns (exit code, report).  Raises SystemExit(2)
    on usage errors, like any argparse program."""
    parser = build_parser()
    args = parser.parse_args(argv)
    params = {k: str(v) for k, v in sorted(vars(args).items())
              if v is not None and k != "out"}
    manifest = RunManifest(argv=list(argv), params=params,
                           seed=getattr(args, "seed", 0),
                           version=__version__, started=now_stamp())
    for flag in _FILE_FLAGS:
        value = getattr(args, flag, None)
        paths = value if isinstance(value, list) else [value]
        for path in paths:
            if isinstance(path, str):
                try:
                    manifest.input_digests[path] = digest_file(path)
                except OSError:
                    pass
    report = Report(manifest=manifest)
    try:
        code = _RUNNERS[args.command](args, report)
    except _NOT_FOUND_ERRORS as exc:
        report.payload["error"] = f"{type(exc).__name__}: {exc}"
        code = 1
    except _USAGE_ERRORS as exc:
        report.payload["error"] = f"{type(exc).__name__}: {exc}"
        code = 2
    manifest.finished = now_stamp()
    return code, report


def replay(manifest: RunManifest) -> tuple[int, Report]:
    """Re-run the command recorded in a manifest."""
    return dispatch(list(manifest.argv))


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, report = dispatch(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    except TuranLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = None
    for i, arg in enumerate(argv):
        if arg == "--out" and i + 1 < len(argv):
            out = argv[i + 1]
    try:
        write_report(report, out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if "error" in report.payload:
        print(f"error: {report.payload['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
