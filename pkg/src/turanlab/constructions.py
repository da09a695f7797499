"""Graph generators: blow-ups, projective-plane incidence graphs over GF(q),
named patterns, and seeded random hosts with verified properties.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BadSpec, NotPrimePower, PreconditionFailed, TrialsExhausted
from .graphs import Bipartition, Graph, bits
from .search import enumerate_independent_sets, find_kss
from .witness import Witness

# Irreducible polynomials over GF(p) for small prime powers, stored as the
# coefficients of x^0..x^(m-1); the leading coefficient is 1.
_IRREDUCIBLE = {
    (2, 2): (1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0),       # x^3 + x + 1
    (2, 4): (1, 1, 0, 0),    # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0), # x^5 + x^2 + 1
    (3, 2): (2, 2),          # x^2 + 2x + 2
    (3, 3): (1, 2, 0),       # x^3 + 2x + 1
    (5, 2): (2, 4),          # x^2 + 4x + 2
}

_MAX_Q = 32


def _factor_prime_power(q: int) -> Optional[tuple[int, int]]:
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            x = q
            while x % p == 0:
                x //= p
                m += 1
            return (p, m) if x == 1 else None
    return None


@dataclass(frozen=True)
class PrimePowerField:
    """GF(q) with table-based arithmetic; elements are ints 0..q-1 encoding
    polynomial coefficients in base p."""

    q: int
    p: int = field(init=False)
    m: int = field(init=False)
    add_table: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    mul_table: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.q > _MAX_Q:
            raise NotPrimePower(f"q={self.q} exceeds the supported bound {_MAX_Q}")
        pm = _factor_prime_power(self.q)
        if pm is None:
            raise NotPrimePower(f"q={self.q} is not a prime power")
        p, m = pm
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        add, mul = self._build_tables(p, m)
        object.__setattr__(self, "add_table", add)
        object.__setattr__(self, "mul_table", mul)
        self._verify_axioms()

    def _coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return out

    def _pack(self, coeffs: Sequence[int]) -> int:
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + (c % self.p)
        return x

    def _build_tables(self, p: int, m: int):
        q = self.q
        if m == 1:
            add = tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
            mul = tuple(tuple((a * b) % p for b in range(q)) for a in range(q))
            return add, mul
        modulus = _IRREDUCIBLE.get((p, m))
        if modulus is None:
            raise NotPrimePower(f"no stored irreducible polynomial for GF({q})")
        add = []
        mul = []
        for a in range(q):
            ca = self._coeffs(a)
            add.append(tuple(self._pack([(x + y) % p for x, y in
                                         zip(ca, self._coeffs(b))])
                             for b in range(q)))
            row = []
            for b in range(q):
                cb = self._coeffs(b)
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(ca):
                    for j, y in enumerate(cb):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for deg in range(2 * m - 2, m - 1, -1):
                    lead = prod[deg]
                    if lead:
                        prod[deg] = 0
                        for j, c in enumerate(modulus):
                            prod[deg - m + j] = (prod[deg - m + j] - lead * c) % p
                row.append(self._pack(prod[:m]))
            mul.append(tuple(row))
        return tuple(add), tuple(mul)

    def _verify_axioms(self):
        q = self.q
        add, mul = self.add_table, self.mul_table
        for a in range(q):
            if sorted(add[a]) != list(range(q)):
                raise NotPrimePower("additive structure is not a group")
        for a in range(1, q):
            row = [mul[a][b] for b in range(1, q)]
            if sorted(row) != list(range(1, q)):
                raise NotPrimePower("nonzero elements do not form a group")
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise NotPrimePower("distributivity fails")

    def addf(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mulf(self, a: int, b: int) -> int:
        return self.mul_table[a][b]


@dataclass(frozen=True)
class BlowupMap:
    base: Graph
    t: int
    class_of: tuple[int, ...]


def blowup(base: Graph, t: int) -> tuple[Graph, BlowupMap]:
    """Replace each base vertex by a t-clique; base edges become complete joins."""
    if t < 1:
        raise BadSpec("blow-up factor must be >= 1")
    n = base.n * t
    class_of = tuple(i // t for i in range(n))
    class_mask = [0] * base.n
    for i in range(n):
        class_mask[class_of[i]] |= 1 << i
    rows = []
    for i in range(n):
        c = class_of[i]
        row = class_mask[c] & ~(1 << i)
        for d in bits(base.adj[c]):
            row |= class_mask[d]
        rows.append(row)
    return Graph(n, tuple(rows)), BlowupMap(base, t, class_of)


def pp_incidence(q: int) -> Bipartition:
    """Point-line incidence graph of PG(2,q): bipartite, (q+1)-regular,
    girth >= 6, hence C4-free."""
    fld = PrimePowerField(q)
    points: list[tuple[int, int, int]] = []
    points.extend((1, a, b) for a in range(q) for b in range(q))
    points.extend((0, 1, a) for a in range(q))
    points.append((0, 0, 1))
    npts = len(points)
    assert npts == q * q + q + 1
    mul, add = fld.mulf, fld.addf

    def dot(u, v):
        return add(add(mul(u[0], v[0]), mul(u[1], v[1])), mul(u[2], v[2]))

    n = 2 * npts
    rows = [0] * n
    for i, pt in enumerate(points):
        for j, ln in enumerate(points):
            if dot(pt, ln) == 0:
                rows[i] |= 1 << (npts + j)
                rows[npts + j] |= 1 << i
    labels = [f"p{u}:{a},{b},{c}" for u, (a, b, c) in enumerate(points)]
    labels += [f"l{u}:{a},{b},{c}" for u, (a, b, c) in enumerate(points)]
    graph = Graph(n, tuple(rows), tuple(labels))
    side = tuple(v >= npts for v in range(n))
    return Bipartition(graph, side)


def named_graph(kind: str, *args) -> Graph:
    """Standard constructions: path(t), cycle(m), complete(n),
    complete_bipartite(s,t), hypercube(d), tree_from_pruefer(seq), empty(n)."""
    if kind == "path":
        (t,) = args
        if t < 1:
            raise BadSpec("path needs at least one vertex")
        return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])
    if kind == "cycle":
        (m,) = args
        if m < 3:
            raise BadSpec("cycle needs at least 3 vertices")
        return Graph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])
    if kind == "complete":
        (n,) = args
        if n < 0:
            raise BadSpec("negative vertex count")
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "complete_bipartite":
        s, t = args
        if s < 0 or t < 0:
            raise BadSpec("negative side size")
        return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])
    if kind == "hypercube":
        (d,) = args
        if d < 0:
            raise BadSpec("negative dimension")
        n = 1 << d
        edges = [(x, x ^ (1 << i)) for x in range(n) for i in range(d) if x < x ^ (1 << i)]
        return Graph.from_edges(n, edges)
    if kind == "tree_from_pruefer":
        (seq,) = args
        return tree_from_pruefer(list(seq))
    if kind == "empty":
        (n,) = args
        if n < 0:
            raise BadSpec("negative vertex count")
        return Graph.from_edges(n, [])
    raise BadSpec(f"unknown graph family {kind!r}")


def tree_from_pruefer(seq: list[int]) -> Graph:
    n = len(seq) + 2
    if any(not (0 <= x < n) for x in seq):
        raise BadSpec("Pruefer label out of range")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    import heapq
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi sample G(n, p)."""
    if not (0 <= p <= 1):
        raise BadSpec("edge probability outside [0,1]")
    rng = random.Random(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if p == 1 or (p > 0 and rng.random() < p):
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def alternating_cycle_bipartition(m: int) -> Bipartition:
    """Even cycle with the alternating two-colouring."""
    if m % 2:
        raise BadSpec("alternating cycle needs even length")
    g = named_graph("cycle", m)
    return Bipartition(g, tuple(bool(v % 2) for v in range(m)))


def random_kss_free_dense(t: int, s: int, seed: int, trials: int = 4096,
                          n_target: Optional[int] = None) -> Graph:
    """Dense K_{s,s}-free graph with small independence number.

    Samples G(N, 1 - s^{-1/2}) with N = ceil(s^{t/10}) and keeps the first
    sample verified to be K_{s,s}-free, to have no independent set of size
    >= t/2, and to have at least N^2/4 edges.  Optionally expands to
    n_target vertices by disjoint copies.
    """
    if s < 2:
        raise PreconditionFailed("s must be >= 2 (s=1 makes the edge probability 0)")
    n_small = math.ceil(s ** (t / 10))
    if n_small > 5000:
        raise PreconditionFailed(f"N={n_small} exceeds the desk-scale guard")
    p = 1 - s ** -0.5
    ind_size = math.ceil(t / 2)  # smallest forbidden independent-set size
    for trial in range(trials):
        g = random_graph(n_small, p, seed * 1_000_003 + trial)
        if 4 * g.edge_count() < n_small * n_small:
            continue
        if ind_size <= n_small and enumerate_independent_sets(
                g, range(n_small), ind_size, cap=1):
            continue
        if find_kss(g, s).found:
            continue
        if n_target is None or n_target <= n_small:
            return g
        copies = n_target // n_small
        edges = []
        for c in range(copies):
            off = c * n_small
            edges.extend((u + off, v + off) for u, v in g.edges())
        return Graph.from_edges(copies * n_small, edges)
    raise TrialsExhausted(f"no verified sample within {trials} trials")
