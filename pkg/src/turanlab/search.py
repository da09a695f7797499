"""Primitive exact searches: bicliques, induced copies, traces, richness.

All searches are exhaustive; degree-based vertex orderings and bitset
pruning only affect the order in which the space is explored.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import WTooSmall
from .graphs import Graph, bits, mask_of
from .witness import Witness


def common_neighborhood(graph: Graph, vertices: Iterable[int]) -> list[int]:
    """Vertices outside S adjacent to every member of S; V(G) when S is empty."""
    return list(bits(common_neighborhood_mask(graph, mask_of(vertices))))


def common_neighborhood_mask(graph: Graph, s_mask: int) -> int:
    acc = graph.full_mask
    for v in bits(s_mask):
        acc &= graph.adj[v]
        if not acc:
            break
    return acc & ~s_mask


def find_kss(graph: Graph, s: int) -> Witness:
    """Exact K_{s,s} subgraph search (disjoint sides)."""
    if s < 1:
        raise ValueError("s must be positive")
    if graph.n < 2 * s:
        return Witness.not_found("fewer than 2s vertices")
    # candidates for the left side need degree >= s
    order = sorted((v for v in range(graph.n) if graph.degree(v) >= s),
                   key=lambda v: (-graph.degree(v), v))
    chosen: list[int] = []

    def extend(start: int, common: int, chosen_mask: int) -> Optional[tuple[list[int], int]]:
        if len(chosen) == s:
            avail = common & ~chosen_mask
            if avail.bit_count() >= s:
                return list(chosen), avail
            return None
        for idx in range(start, len(order)):
            if len(order) - idx < s - len(chosen):
                break
            v = order[idx]
            new_common = common & graph.adj[v]
            # right side may still use chosen-left vertices' bits; exclude later
            if (new_common & ~(chosen_mask | (1 << v))).bit_count() < s:
                continue
            chosen.append(v)
            hit = extend(idx + 1, new_common, chosen_mask | (1 << v))
            chosen.pop()
            if hit is not None:
                return hit
        return None

    result = extend(0, graph.full_mask, 0)
    if result is None:
        return Witness.not_found("no K_{%d,%d} subgraph" % (s, s))
    left, avail = result
    right = []
    for v in bits(avail):
        right.append(v)
        if len(right) == s:
            break
    return Witness.biclique(left, right)


def _match_order(pattern: Graph) -> list[int]:
    """Pattern vertex order: descending degree, ties by index."""
    return sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))


def _backtrack_copy(graph: Graph, pattern: Graph, induced: bool) -> Optional[dict[int, int]]:
    if pattern.n > graph.n:
        return None
    order = _match_order(pattern)
    full = graph.full_mask
    image: dict[int, int] = {}
    used = 0

    def place(pos: int) -> bool:
        nonlocal used
        if pos == pattern.n:
            return True
        u = order[pos]
        cand = full & ~used
        for prev in order[:pos]:
            gv = image[prev]
            if pattern.has_edge(u, prev):
                cand &= graph.adj[gv]
            elif induced:
                cand &= ~graph.adj[gv]
            if not cand:
                return False
        for v in bits(cand):
            image[u] = v
            used |= 1 << v
            if place(pos + 1):
                return True
            used &= ~(1 << v)
            del image[u]
        return False

    return dict(image) if place(0) else None


def find_induced_copy(graph: Graph, pattern: Graph) -> Witness:
    """Exact induced-subgraph-isomorphism decision with a certificate."""
    phi = _backtrack_copy(graph, pattern, induced=True)
    if phi is None:
        return Witness.not_found("no induced copy")
    return Witness.induced_copy(phi)


def find_subgraph_copy(graph: Graph, pattern: Graph) -> Witness:
    """Exact (not necessarily induced) subgraph containment."""
    phi = _backtrack_copy(graph, pattern, induced=False)
    if phi is None:
        return Witness.not_found("no subgraph copy")
    return Witness.induced_copy(phi)  # mapping certificate; edges-only check


def has_subgraph(graph: Graph, pattern: Graph) -> bool:
    return _backtrack_copy(graph, pattern, induced=False) is not None


def heavy_viewers(graph: Graph, w: Iterable[int], s: int) -> list[int]:
    """Vertices v with |W \\ N(v)| <= |W| / 2s."""
    w_mask = mask_of(w)
    w_size = w_mask.bit_count()
    if w_size < 2 * s:
        raise WTooSmall(f"|W|={w_size} < 2s={2 * s}")
    out = []
    for v in range(graph.n):
        missed = (w_mask & ~graph.adj[v]).bit_count()
        if missed * 2 * s <= w_size:
            out.append(v)
    return out


def enumerate_independent_sets(graph: Graph, x: Iterable[int], r: int,
                               cap: int) -> list[tuple[int, ...]]:
    """Independent r-sets inside X, lexicographic, truncated at cap."""
    if r < 1:
        raise ValueError("r must be positive")
    xs = sorted(set(x))
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def extend(start: int, forbidden: int) -> bool:
        if len(cur) == r:
            out.append(tuple(cur))
            return len(out) < cap
        for idx in range(start, len(xs)):
            if len(xs) - idx < r - len(cur):
                break
            v = xs[idx]
            if (forbidden >> v) & 1:
                continue
            cur.append(v)
            keep_going = extend(idx + 1, forbidden | graph.adj[v])
            cur.pop()
            if not keep_going:
                return False
        return True

    extend(0, 0)
    return out


def check_rich_set(graph: Graph, s_vertices: Iterable[int], k: int,
                   theta: int) -> Witness:
    """RichSet iff every trace T of size <= k is realized by >= theta outsiders."""
    if theta < 1:
        raise ValueError("theta must be positive")
    s_list = sorted(set(s_vertices))
    s_mask = mask_of(s_list)
    counts: dict[int, int] = {}
    for v in range(graph.n):
        if (s_mask >> v) & 1:
            continue
        tr = graph.adj[v] & s_mask
        counts[tr] = counts.get(tr, 0) + 1

    trace_counts: dict[tuple[int, ...], int] = {}

    def subsets_up_to(items: list[int], limit: int):
        yield ()
        stack = [((), 0)]
        while stack:
            prefix, start = stack.pop()
            if len(prefix) == limit:
                continue
            for idx in range(start, len(items)):
                new = prefix + (items[idx],)
                yield new
                stack.append((new, idx + 1))

    for t in subsets_up_to(s_list, k):
        tr = mask_of(t)
        cnt = counts.get(tr, 0)
        trace_counts[t] = cnt
        if cnt < theta:
            return Witness.not_found(
                f"trace {t} realized by {cnt} < theta={theta} vertices")
    return Witness.rich_set(s_list, trace_counts)
