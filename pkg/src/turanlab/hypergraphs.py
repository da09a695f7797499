"""Uniform set systems: set degrees, heavy/light edges, restriction,
density-increment cleaning to a superspread family, and bad-tuple counting.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import HypothesisFailed, NotPartite, StuckBelowUniformity


@dataclass(frozen=True)
class UniformHypergraph:
    """t-uniform hypergraph on ground vertices 0..n-1.

    ``parts`` (optional) assigns each vertex a part index; in partite form
    every edge meets each part at most once.
    """

    n: int
    t: int
    edges: tuple[frozenset[int], ...]
    parts: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.t:
                raise ValueError(f"edge {sorted(e)} is not {self.t}-uniform")
            if any(not (0 <= v < self.n) for v in e):
                raise ValueError("edge vertex out of range")
        if self.parts is not None:
            if len(self.parts) != self.n:
                raise ValueError("parts must cover all vertices")
            for e in self.edges:
                seen = [self.parts[v] for v in e]
                if len(set(seen)) != len(seen):
                    raise ValueError("partite edge meets a part twice")

    def edge_count(self) -> int:
        return len(self.edges)

    def part_ids(self) -> list[int]:
        if self.parts is None:
            raise NotPartite("hypergraph has no partition")
        return sorted({self.parts[v] for e in self.edges for v in e}
                      | set(self.parts))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "edges": [sorted(e) for e in self.edges],
            "parts": list(self.parts) if self.parts is not None else None,
        }

    @staticmethod
    def from_json(obj: dict) -> "UniformHypergraph":
        parts = obj.get("parts")
        return UniformHypergraph(
            obj["n"], obj["t"],
            tuple(frozenset(e) for e in obj["edges"]),
            tuple(parts) if parts is not None else None)


@dataclass(frozen=True)
class SpreadParams:
    """Cleaning parameters: target fraction of heavy edges and heaviness ratio."""

    epsilon: Fraction
    delta: Fraction
    a: int  # minimum acceptable uniformity
    r: int  # starting uniformity

    def __post_init__(self):
        if not (0 < self.epsilon < 1 and 0 < self.delta < 1):
            raise ValueError("epsilon and delta must lie in (0,1)")
        if not (1 <= self.a <= self.r):
            raise ValueError("need 1 <= a <= r")

    @property
    def cr(self) -> int:
        return self.r ** self.r * 2 ** (self.r * self.r)

    @staticmethod
    def defaults(a: int, s: int) -> "SpreadParams":
        """epsilon = (2a)^-2, delta = (2a)^-2(a+1) s^-1, r = 2a."""
        return SpreadParams(
            epsilon=Fraction(1, (2 * a) ** 2),
            delta=Fraction(1, (2 * a) ** (2 * (a + 1)) * s),
            a=a, r=2 * a)


@dataclass(frozen=True)
class BadTupleFamily:
    """Ordered ell-tuples with a bounded number of last-coordinate extensions."""

    ell: int
    contains: Callable[[tuple[int, ...]], bool]
    s_bound: int

    def extension_bound_holds(self, ground: Sequence[int]) -> bool:
        """Exhaustively check the extension bound (desk scale only)."""
        for prefix in itertools.permutations(ground, self.ell - 1):
            count = sum(
                1 for v in ground
                if v not in prefix and self.contains(prefix + (v,)))
            if count > self.s_bound:
                return False
        return True


def _degree_table(h: UniformHypergraph) -> dict[frozenset[int], int]:
    """Degrees of every subset of every edge (including the empty set)."""
    table: dict[frozenset[int], int] = {}
    for e in h.edges:
        members = sorted(e)
        for size in range(len(members) + 1):
            for sub in itertools.combinations(members, size):
                key = frozenset(sub)
                table[key] = table.get(key, 0) + 1
    return table


def set_degree(h: UniformHypergraph, s: Iterable[int]) -> int:
    """Number of edges containing S; deg(empty) = e(H)."""
    key = frozenset(s)
    return sum(1 for e in h.edges if key <= e)


def _heavy_witness(edge: frozenset[int], delta: Fraction,
                   table: dict[frozenset[int], int],
                   allow_empty: bool) -> Optional[tuple[frozenset[int], int]]:
    members = sorted(edge)
    min_size = 0 if allow_empty else 1
    for size in range(min_size, len(members)):
        for sub in itertools.combinations(members, size):
            s = frozenset(sub)
            deg_s = table[s]
            for v in members:
                if v in s:
                    continue
                if table[s | {v}] >= delta * deg_s:
                    return s, v
    return None


def heavy_edges(h: UniformHypergraph, delta: Fraction, *,
                allow_empty: bool = True) -> list[int]:
    """Indices of delta-heavy edges.

    ``allow_empty`` controls whether the witnessing set S may be empty
    (deg(empty) = e(H)); both readings are exposed so property suites can
    compare them.
    """
    if not (0 < delta <= 1):
        raise ValueError("delta must lie in (0,1]")
    table = _degree_table(h)
    out = []
    for i, e in enumerate(h.edges):
        if _heavy_witness(e, delta, table, allow_empty) is not None:
            out.append(i)
    return out


def is_superspread(h: UniformHypergraph, epsilon: Fraction, delta: Fraction, *,
                   allow_empty: bool = True) -> bool:
    """At most an epsilon-fraction of edges are delta-heavy."""
    heavy = heavy_edges(h, delta, allow_empty=allow_empty)
    return len(heavy) <= epsilon * h.edge_count()


def restrict(h: UniformHypergraph, part_index_set: Iterable[int]) -> UniformHypergraph:
    """Project a partite hypergraph onto a set of parts (dedup set semantics)."""
    if h.parts is None:
        raise NotPartite("restrict requires a partite hypergraph")
    keep = set(part_index_set)
    if not keep:
        raise ValueError("part-index set must be non-empty")
    projected = {frozenset(v for v in e if h.parts[v] in keep) for e in h.edges}
    sizes = {len(e) for e in projected}
    if len(sizes) != 1:
        raise NotPartite("projection is not uniform; edges must meet every kept part")
    (t,) = sizes
    return UniformHypergraph(h.n, t, tuple(sorted(projected, key=sorted)), h.parts)


def clean_to_superspread(h: UniformHypergraph, params: SpreadParams,
                         seed: int, *, allow_empty: bool = True,
                         check_hypothesis: bool = True) -> UniformHypergraph:
    """Random r-partition then density-increment cleaning until superspread.

    Raises StuckBelowUniformity when the partition was unlucky (the caller
    retries with a fresh seed) and HypothesisFailed when the edge-count
    hypothesis Cr * (eps*delta)^-r * n^(a-1) is not met.
    """
    eps, delta = params.epsilon, params.delta
    if check_hypothesis:
        threshold = params.cr * (eps * delta) ** (-params.r) * h.n ** (params.a - 1)
        if h.edge_count() < threshold:
            raise HypothesisFailed(
                f"e(H)={h.edge_count()} below cleaning threshold {float(threshold):.3g}")
    if h.t != params.r:
        raise ValueError("starting uniformity r must match the hypergraph")
    if is_superspread(h, eps, delta, allow_empty=allow_empty):
        return h

    rng = random.Random(seed)
    assignment = tuple(rng.randrange(params.r) for _ in range(h.n))
    rainbow = tuple(e for e in h.edges
                    if len({assignment[v] for v in e}) == h.t)
    if not rainbow:
        raise StuckBelowUniformity("random partition left no rainbow edges")
    cur = UniformHypergraph(h.n, h.t, rainbow, assignment)
    live_parts = set(range(params.r))

    while True:
        table = _degree_table(cur)
        witnesses: list[tuple[int, frozenset[int], int]] = []
        for i, e in enumerate(cur.edges):
            w = _heavy_witness(e, delta, table, allow_empty)
            if w is not None:
                witnesses.append((i, w[0], w[1]))
        if len(witnesses) <= eps * cur.edge_count():
            return cur
        if len(live_parts) - 1 < params.a:
            raise StuckBelowUniformity(
                f"cleaning would drop uniformity below a={params.a}")
        # pigeonhole over (parts of S, part of v); drop the most loaded part
        classes: dict[tuple[frozenset[int], int], int] = {}
        for _, s, v in witnesses:
            key = (frozenset(assignment[u] for u in s), assignment[v])
            classes[key] = classes.get(key, 0) + 1
        (_, drop), _ = max(classes.items(),
                           key=lambda kv: (kv[1], sorted(kv[0][0]), -kv[0][1]))
        live_parts.discard(drop)
        cur = restrict(cur, live_parts)


def count_bad_edges(h: UniformHypergraph, family: BadTupleFamily) -> int:
    """Edges containing at least one ordered tuple of the bad family."""
    if family.ell > h.t:
        raise ValueError("tuple length exceeds uniformity")
    count = 0
    for e in h.edges:
        members = sorted(e)
        if any(family.contains(tup)
               for tup in itertools.permutations(members, family.ell)):
            count += 1
    return count
