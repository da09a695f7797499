"""Bitset-backed simple graphs, bipartitions, patterns, and the graph6 codec.

Adjacency is stored as one Python int per vertex (bit v of row u set iff
uv is an edge), so neighbourhood intersections, traces and degree counts
are single bitwise operations.  Graphs are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BadSpec, MalformedGraph6


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with bitset adjacency rows."""

    n: int
    adj: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count must equal n")
        full = self.full_mask
        for v, row in enumerate(self.adj):
            if row & (1 << v):
                raise ValueError(f"self-loop at vertex {v}")
            if row & ~full:
                raise ValueError(f"row {v} references vertices >= n")
        for u in range(self.n):
            for v in bits(self.adj[u]):
                if not self.adj[v] & (1 << u):
                    raise ValueError(f"asymmetric adjacency at {u},{v}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows), tuple(labels) if labels else None)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for off in bits(row):
                out.append((u, u + 1 + off))
        return out

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def complement(self) -> "Graph":
        full = self.full_mask
        rows = tuple((full & ~row) & ~(1 << v) for v, row in enumerate(self.adj))
        return Graph(self.n, rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        verts = list(vertices)
        index = {v: i for i, v in enumerate(verts)}
        rows = [0] * len(verts)
        for i, v in enumerate(verts):
            for w in bits(self.adj[v]):
                j = index.get(w)
                if j is not None:
                    rows[i] |= 1 << j
        return Graph(len(verts), tuple(rows))

    def subgraph_mask(self, mask: int) -> "Graph":
        return self.induced(list(bits(mask)))

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.n, self.adj)


@dataclass(frozen=True)
class Bipartition:
    """Two-coloured host graph plus its crossing-edges-only subgraph."""

    graph: Graph
    side: tuple[bool, ...]  # False = side A, True = side B
    crossing: Graph = field(init=False)

    def __post_init__(self):
        if len(self.side) != self.graph.n:
            raise ValueError("side flags must cover all vertices")
        rows = []
        a_mask = mask_of(v for v in range(self.graph.n) if not self.side[v])
        b_mask = self.graph.full_mask & ~a_mask
        for v in range(self.graph.n):
            opposite = b_mask if not self.side[v] else a_mask
            rows.append(self.graph.adj[v] & opposite)
        object.__setattr__(self, "crossing", Graph(self.graph.n, tuple(rows)))

    @property
    def side_a(self) -> list[int]:
        return [v for v in range(self.graph.n) if not self.side[v]]

    @property
    def side_b(self) -> list[int]:
        return [v for v in range(self.graph.n) if self.side[v]]

    def side_a_mask(self) -> int:
        return mask_of(self.side_a)

    def side_b_mask(self) -> int:
        return mask_of(self.side_b)


def two_colour(graph: Graph) -> Optional[tuple[bool, ...]]:
    """BFS 2-colouring; None if the graph is not bipartite."""
    colour: list[Optional[bool]] = [None] * graph.n
    for root in range(graph.n):
        if colour[root] is not None:
            continue
        colour[root] = False
        queue = [root]
        while queue:
            u = queue.pop()
            for v in bits(graph.adj[u]):
                if colour[v] is None:
                    colour[v] = not colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return tuple(bool(c) for c in colour)


@dataclass(frozen=True)
class PatternSpec:
    """A bipartite pattern H=(A,B;E) with bounded degrees on the B side."""

    pattern: Graph
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        seen = set(self.side_a) | set(self.side_b)
        if len(self.side_a) + len(self.side_b) != self.pattern.n or len(seen) != self.pattern.n:
            raise ValueError("sideA/sideB must partition the pattern vertices")
        a_mask = mask_of(self.side_a)
        b_mask = mask_of(self.side_b)
        for v in self.side_a:
            if self.pattern.adj[v] & a_mask:
                raise ValueError("pattern has an edge inside side A")
        for v in self.side_b:
            if self.pattern.adj[v] & b_mask:
                raise ValueError("pattern has an edge inside side B")

    @staticmethod
    def from_graph(pattern: Graph) -> "PatternSpec":
        side = two_colour(pattern)
        if side is None:
            raise ValueError("pattern is not bipartite")
        side_a = tuple(v for v in range(pattern.n) if not side[v])
        side_b = tuple(v for v in range(pattern.n) if side[v])
        # put the lower-max-degree class on the B side
        deg_b = max((pattern.degree(v) for v in side_b), default=0)
        deg_a = max((pattern.degree(v) for v in side_a), default=0)
        if deg_a < deg_b:
            side_a, side_b = side_b, side_a
        return PatternSpec(pattern, side_a, side_b)

    @property
    def a(self) -> int:
        return len(self.side_a)

    @property
    def b(self) -> int:
        return len(self.side_b)

    @property
    def h(self) -> int:
        return self.pattern.n

    @property
    def k(self) -> int:
        """Maximum degree over the B side."""
        return max((self.pattern.degree(v) for v in self.side_b), default=0)

    @property
    def ch(self) -> int:
        """Embedding constant 4|A||B|."""
        return 4 * self.a * self.b


# ---------------------------------------------------------------------------
# graph6 codec
# ---------------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 0:
        raise MalformedGraph6("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> sh) & 63) + 63) for sh in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) + chr(126) + "".join(
            chr(((n >> sh) & 63) + 63) for sh in (30, 24, 18, 12, 6, 0))
    raise MalformedGraph6("vertex count too large for graph6")


def graph_to_graph6(graph: Graph) -> str:
    """Encode a graph as a graph6 ASCII string."""
    n = graph.n
    out = [_encode_n(n)]
    buf = 0
    nbits = 0
    for j in range(1, n):
        col = graph.adj[j]
        for i in range(j):
            buf = (buf << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(buf + 63))
                buf = nbits = 0
    if nbits:
        buf <<= 6 - nbits
        out.append(chr(buf + 63))
    return "".join(out)


def graph_from_graph6(data: str | bytes) -> Graph:
    """Decode a graph6 string (short or extended-length header)."""
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedGraph6("non-ASCII input") from exc
    s = data.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedGraph6("empty input")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise MalformedGraph6(f"invalid character {ch!r}")
    pos = 0
    if ord(s[0]) == 126:
        if len(s) >= 2 and ord(s[1]) == 126:
            if len(s) < 8:
                raise MalformedGraph6("truncated length header")
            n = 0
            for ch in s[2:8]:
                n = (n << 6) | (ord(ch) - 63)
            pos = 8
        else:
            if len(s) < 4:
                raise MalformedGraph6("truncated length header")
            n = 0
            for ch in s[1:4]:
                n = (n << 6) | (ord(ch) - 63)
            pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} body characters, got {len(body)}")
    rows = [0] * n
    bit_index = 0
    i, j = 0, 1  # column-major upper triangle: column j holds j bits
    for ch in body:
        group = ord(ch) - 63
        for b in range(5, -1, -1):
            if bit_index >= nbits:
                if (group >> b) & 1:
                    raise MalformedGraph6("nonzero padding bits")
                continue
            if (group >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit_index += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def check_spec(kind: str, *args: int) -> None:
    if any(a < 0 for a in args):
        raise BadSpec(f"{kind}: negative parameter")
