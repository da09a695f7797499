"""Ground-truth brute force: canonical forms, isomorph-free enumeration,
exact extremal edge counts under forbidden-pattern constraints, and the
ratio table comparing the induced-variant values with classical ones.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import TooLarge
from .graphs import Graph, PatternSpec, bits, graph_to_graph6
from .search import find_induced_copy, find_kss, has_subgraph

_SOLVER_LIMIT = 9
_PATTERN_LIMIT = 8

_canon_cache: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}


def canonical_code(graph: Graph) -> tuple[int, ...]:
    """Lexicographically minimal placement code over all vertex orders.

    Vertices are placed one at a time; placing the p-th vertex appends a
    p-bit integer whose bit i records adjacency to the i-th placed vertex.
    The code determines the graph up to isomorphism.
    """
    key = graph.key()
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    n = graph.n
    code: list[int] = []
    # frontier: partial placements realizing the minimal code prefix,
    # deduplicated by the placement patterns of the unplaced vertices
    frontier: list[tuple[int, ...]] = [()]
    for p in range(n):
        best: Optional[int] = None
        extensions: list[tuple[int, ...]] = []
        for perm in frontier:
            used = 0
            for u in perm:
                used |= 1 << u
            for v in range(n):
                if (used >> v) & 1:
                    continue
                col = 0
                for i, u in enumerate(perm):
                    if graph.has_edge(v, u):
                        col |= 1 << i
                if best is None or col < best:
                    best = col
                    extensions = [perm + (v,)]
                elif col == best:
                    extensions.append(perm + (v,))
        assert best is not None
        code.append(best)
        seen = set()
        deduped = []
        for perm in extensions:
            used = 0
            for u in perm:
                used |= 1 << u
            profile = tuple(
                tuple(1 if graph.has_edge(v, u) else 0 for u in perm)
                for v in range(n) if not (used >> v) & 1)
            sig = (used, profile)
            if sig not in seen:
                seen.add(sig)
                deduped.append(perm)
        frontier = deduped
    result = tuple(code)
    if len(_canon_cache) < 500_000:
        _canon_cache[key] = result
    return result


def canonical_graph(graph: Graph) -> Graph:
    """The isomorphism-class representative built from canonical_code."""
    code = canonical_code(graph)
    edges = []
    for j, col in enumerate(code):
        for i in bits(col):
            edges.append((i, j))
    return Graph.from_edges(graph.n, edges)


def enumerate_up_to_iso(n: int, keep: Optional[Callable[[Graph], bool]] = None
                        ) -> list[Graph]:
    """All graphs on n vertices up to isomorphism, by one-vertex augmentation
    with canonical-code deduplication.

    ``keep`` must be hereditary (closed under induced subgraphs); it prunes
    whole augmentation branches without losing any surviving graph.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > _SOLVER_LIMIT:
        raise TooLarge(f"n={n} exceeds the enumeration guard {_SOLVER_LIMIT}")
    if n == 0:
        return [Graph(0, ())]
    level = [Graph(1, (0,))]
    if keep is not None:
        level = [g for g in level if keep(g)]
    for m in range(2, n + 1):
        seen: dict[tuple[int, ...], Graph] = {}
        for g in level:
            for mask in range(1 << (m - 1)):
                rows = list(g.adj) + [mask]
                for i in bits(mask):
                    rows[i] |= 1 << (m - 1)
                cand = Graph(m, tuple(rows))
                if keep is not None and not keep(cand):
                    continue
                code = canonical_code(cand)
                if code not in seen:
                    seen[code] = cand
        level = [seen[c] for c in sorted(seen)]
    return level


@dataclass(frozen=True)
class ConstraintSet:
    """Forbidden patterns: induced copies and plain subgraphs."""

    induced_forbidden: tuple[Graph, ...] = ()
    subgraph_forbidden: tuple[Graph, ...] = ()

    def __post_init__(self):
        for p in self.induced_forbidden + self.subgraph_forbidden:
            if p.n > _PATTERN_LIMIT:
                raise TooLarge(f"pattern on {p.n} > {_PATTERN_LIMIT} vertices")

    @staticmethod
    def induced_variant(pattern: Graph, s: int) -> "ConstraintSet":
        """No induced copy of the pattern and no K_{s,s} subgraph."""
        from .constructions import named_graph
        return ConstraintSet(
            induced_forbidden=(pattern,),
            subgraph_forbidden=(named_graph("complete_bipartite", s, s),))

    @staticmethod
    def classical(pattern: Graph) -> "ConstraintSet":
        return ConstraintSet(subgraph_forbidden=(pattern,))

    def satisfied(self, graph: Graph) -> bool:
        for p in self.subgraph_forbidden:
            if has_subgraph(graph, p):
                return False
        for p in self.induced_forbidden:
            if find_induced_copy(graph, p).found:
                return False
        return True


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    max_edges: int
    witness_graphs: tuple[str, ...]  # graph6, extremal graphs up to iso
    count_extremal: int
    search_stats: dict[str, int] = field(default_factory=dict)


def extremal_search(n: int, constraints: ConstraintSet) -> ExtremalResult:
    """Exact maximum edge count over all n-vertex graphs meeting the
    constraints, by isomorph-free enumeration with hereditary pruning."""
    if n > _SOLVER_LIMIT:
        raise TooLarge(f"n={n} exceeds the enumeration guard {_SOLVER_LIMIT}")
    graphs = enumerate_up_to_iso(n, constraints.satisfied)
    best = max((g.edge_count() for g in graphs), default=0)
    winners = [g for g in graphs if g.edge_count() == best]
    return ExtremalResult(
        n=n,
        max_edges=best,
        witness_graphs=tuple(sorted(graph_to_graph6(g) for g in winners)),
        count_extremal=len(winners),
        search_stats={"graphs_enumerated": len(graphs)})


@dataclass(frozen=True)
class RatioRow:
    n: int
    s: int
    ex_star: int        # no induced H, no K_{s,s} subgraph
    ex_classical: int   # no H subgraph
    ex_both: int        # no H subgraph, no K_{s,s} subgraph
    ex_kss: int         # no K_{s,s} subgraph
    ratio: Optional[Fraction]  # ex_star / ex_classical, None when 0/0

    def sandwich_holds(self) -> bool:
        return self.ex_both <= self.ex_star <= self.ex_kss


def ratio_table(h: PatternSpec, s_range: Iterable[int],
                n_range: Iterable[int]) -> list[RatioRow]:
    """Exact value table for comparing the induced variant with the
    classical one; all four columns from extremal_search."""
    from .constructions import named_graph
    pattern = h.pattern
    rows: list[RatioRow] = []
    for s in s_range:
        kss = named_graph("complete_bipartite", s, s)
        for n in n_range:
            star = extremal_search(n, ConstraintSet.induced_variant(pattern, s))
            classical = extremal_search(n, ConstraintSet.classical(pattern))
            both = extremal_search(n, ConstraintSet(
                subgraph_forbidden=(pattern, kss)))
            only_kss = extremal_search(n, ConstraintSet(
                subgraph_forbidden=(kss,)))
            ratio = (Fraction(star.max_edges, classical.max_edges)
                     if classical.max_edges else None)
            rows.append(RatioRow(n, s, star.max_edges, classical.max_edges,
                                 both.max_edges, only_kss.max_edges, ratio))
    return rows


def table_to_csv(rows: Sequence[RatioRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "s", "ex_star", "ex_classical",
                     "ex_both", "ex_kss", "ratio"])
    for r in rows:
        writer.writerow([r.n, r.s, r.ex_star, r.ex_classical,
                         r.ex_both, r.ex_kss,
                         "" if r.ratio is None else str(r.ratio)])
    return buf.getvalue()
