"""Shared fixtures and reference constructions used across the suite."""

import itertools

from turanlab.graphs import Graph


def trace_gadget(a: int, k: int, theta: int) -> Graph:
    """Host with a planted independent set S = {0..a-1} and, for every
    T subset of S with |T| <= k, exactly theta dedicated outside vertices
    adjacent to T and nothing else.  Outside vertices are mutually
    non-adjacent, so S is rich by construction."""
    subsets = [t for size in range(0, k + 1)
               for t in itertools.combinations(range(a), size)]
    edges = []
    idx = a
    for t in subsets:
        for _ in range(theta):
            edges.extend((u, idx) for u in t)
            idx += 1
    return Graph.from_edges(idx, edges)


def all_labeled_graphs(n: int):
    """Every labeled graph on n vertices, as a generator."""
    pairs = list(itertools.combinations(range(n), 2))
    for bitmask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (bitmask >> i) & 1]
        yield Graph.from_edges(n, edges)


def naive_has_kss(graph: Graph, s: int) -> bool:
    """Reference biclique test: all (s-set, s-set) pairs."""
    verts = range(graph.n)
    for left in itertools.combinations(verts, s):
        rest = [v for v in verts if v not in left]
        for right in itertools.combinations(rest, s):
            if all(graph.has_edge(u, v) for u in left for v in right):
                return True
    return False


def naive_has_induced(graph: Graph, pattern: Graph) -> bool:
    """Reference induced-copy test: all injections."""
    for image in itertools.permutations(range(graph.n), pattern.n):
        if all(pattern.has_edge(u, v) == graph.has_edge(image[u], image[v])
               for u in range(pattern.n) for v in range(u + 1, pattern.n)):
            return True
    return False


def naive_has_subgraph(graph: Graph, pattern: Graph) -> bool:
    for image in itertools.permutations(range(graph.n), pattern.n):
        if all(graph.has_edge(image[u], image[v])
               for u, v in pattern.edges()):
            return True
    return False


def naive_hom_cycle(graph: Graph, k: int) -> int:
    """Closed 2k-walk count by direct DFS over adjacency."""
    from turanlab.graphs import bits
    length = 2 * k
    total = 0

    def walk(start: int, cur: int, remaining: int):
        nonlocal total
        if remaining == 1:
            if graph.has_edge(cur, start):
                total += 1
            return
        for nxt in bits(graph.adj[cur]):
            walk(start, nxt, remaining - 1)

    for v in range(graph.n):
        walk(v, v, length)
    return total
