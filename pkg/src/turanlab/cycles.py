"""Even-cycle machinery: closed-walk counting, degeneracy statistics,
almost-regular extraction, alternating path-pair statistics, red-blue
selection, and the induced alternating-cycle and cube finders.

All counting uses exact integer arithmetic; density comparisons use
Fractions so property checks can never fail to rounding.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CostGuard, PreconditionFailed, RetriesExhausted, TooLarge
from .graphs import Bipartition, Graph, bits, mask_of
from .search import find_induced_copy, find_kss
from .witness import Witness, validate_witness


@dataclass(frozen=True)
class CycleParams:
    """Parameters of the induced alternating C_{2k} pipeline."""

    k: int
    alpha: Fraction
    c: Fraction
    s: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    @property
    def c0(self) -> Fraction:
        return self.c / 4

    @property
    def big_k(self) -> int:
        """Almost-regularity target 2^(3/alpha + 5)."""
        e = Fraction(3) / self.alpha + 5
        return 2 ** -(-e.numerator // e.denominator)  # ceil

    @staticmethod
    def for_cycle(k: int, s: int, c: Fraction = Fraction(1)) -> "CycleParams":
        return CycleParams(k=k, alpha=Fraction(1, k), c=c, s=s)


@dataclass(frozen=True)
class PathStats:
    """Alternating k-edge path-pair statistics between two endpoints."""

    u: int
    v: int
    p: int  # |P_{u,v}|
    a: int  # ordered pairs sharing an internal vertex (self-pairs included)
    b: int  # ordered pairs of distinct paths with an interior-interior edge
    paths: Optional[tuple[tuple[int, ...], ...]] = None


def _int_matmul(x: list[list[int]], y: list[list[int]]) -> list[list[int]]:
    n = len(x)
    yt = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in yt] for row in x]


def hom_cycle_count(graph: Graph, k: int) -> int:
    """Closed walks of length 2k: trace of A^(2k) over exact integers."""
    if k < 1:
        raise ValueError("k must be positive")
    n = graph.n
    if n == 0:
        return 0
    a = [[1 if graph.has_edge(i, j) else 0 for j in range(n)] for i in range(n)]
    power = 2 * k
    result = None
    base = a
    while power:
        if power & 1:
            result = base if result is None else _int_matmul(result, base)
        power >>= 1
        if power:
            base = _int_matmul(base, base)
    assert result is not None
    return sum(result[i][i] for i in range(n))


def nondegenerate_cycle_count(graph: Graph, k: int,
                              cost_guard: int = 50_000_000) -> tuple[int, int]:
    """(non-degenerate, degenerate) closed 2k-walk counts by exhaustive DFS
    with distinctness pruning; their sum equals hom_cycle_count."""
    total = hom_cycle_count(graph, k)
    length = 2 * k
    cost = graph.n * max(1, graph.max_degree()) ** (length - 1)
    if cost > cost_guard:
        raise TooLarge(f"estimated cost {cost} exceeds guard {cost_guard}")
    nondeg = 0
    walk: list[int] = []

    def extend(used: int):
        nonlocal nondeg
        pos = len(walk)
        if pos == length:
            if graph.has_edge(walk[-1], walk[0]):
                nondeg += 1
            return
        prev = walk[-1]
        for v in bits(graph.adj[prev] & ~used):
            walk.append(v)
            extend(used | (1 << v))
            walk.pop()

    for start in range(graph.n):
        walk.append(start)
        extend(1 << start)
        walk.pop()
    return nondeg, total - nondeg


def sidorenko_holds(graph: Graph, k: int) -> bool:
    """hom(C_2k, G) >= d(G)^(2k), checked in exact rational arithmetic."""
    n = graph.n
    if n == 0:
        return True
    hom = hom_cycle_count(graph, k)
    e2 = 2 * graph.edge_count()
    return hom * n ** (2 * k) >= e2 ** (2 * k)


def degenerate_bound_holds(graph: Graph, k: int) -> bool:
    """Degenerate count <= 32 k^(3/2) Delta^(1/2) n^(1/2k) hom^(1-1/2k),
    compared after raising both sides to the 2k-th power (exact integers)."""
    nondeg, deg = nondegenerate_cycle_count(graph, k)
    hom = nondeg + deg
    if deg == 0:
        return True
    lhs = deg ** (2 * k)
    rhs = (32 ** (2 * k) * k ** (3 * k) * graph.max_degree() ** k
           * graph.n * hom ** (2 * k - 1))
    return lhs <= rhs


def _subgraph_edge_count(graph: Graph, mask: int) -> int:
    return sum((graph.adj[v] & mask).bit_count() for v in bits(mask)) // 2


def almost_regular_subgraph(graph: Graph, params: CycleParams, *,
                            override_density: bool = False,
                            exact_limit: int = 14) -> tuple[Graph, list[int]]:
    """K-almost-regular induced subgraph via alpha-maximal extraction
    (exact subset scan for tiny n, ratio peeling above) followed by
    high-degree removal and low-degree peeling."""
    alpha = params.alpha
    p_num, q_den = alpha.numerator, alpha.denominator
    n, e = graph.n, graph.edge_count()
    if not override_density:
        if Fraction(e) ** q_den < params.c ** q_den * Fraction(n) ** (q_den + p_num):
            raise PreconditionFailed("e(G) < C n^(1+alpha)")

    def ratio_key(edges: int, verts: int) -> tuple[int, int]:
        # compare e/v^(1+alpha) exactly: e^q / v^(q+p)
        return (edges ** q_den, verts ** (q_den + p_num))

    def better(e1, v1, e2, v2) -> bool:
        a1, b1 = ratio_key(e1, v1)
        a2, b2 = ratio_key(e2, v2)
        return a1 * b2 > a2 * b1

    best_mask = graph.full_mask
    best_e, best_v = e, n
    if n <= exact_limit:
        for mask in range(1, 1 << n):
            se = _subgraph_edge_count(graph, mask)
            sv = mask.bit_count()
            if better(se, sv, best_e, best_v):
                best_mask, best_e, best_v = mask, se, sv
    else:
        mask = graph.full_mask
        cur_e = e
        while mask.bit_count() > 2:
            best_drop, drop_e = None, -1
            for v in bits(mask):
                ne = cur_e - (graph.adj[v] & mask).bit_count()
                nv = mask.bit_count() - 1
                if best_drop is None or better(ne, nv, drop_e,
                                               mask.bit_count() - 1):
                    best_drop, drop_e = v, ne
            mask &= ~(1 << best_drop)
            cur_e = drop_e
            if cur_e and better(cur_e, mask.bit_count(), best_e, best_v):
                best_mask, best_e, best_v = mask, cur_e, mask.bit_count()

    alive = best_mask
    m = alive.bit_count()
    if best_e == 0 or m == 0:
        verts = sorted(bits(alive))
        return graph.induced(verts), verts
    d_avg = Fraction(2 * best_e, m)
    e3 = Fraction(3) / alpha + 2
    k0 = 2 ** -(-e3.numerator // e3.denominator)
    for v in sorted(bits(alive)):
        if (graph.adj[v] & alive).bit_count() >= k0 * d_avg:
            alive &= ~(1 << v)
    m2 = alive.bit_count()
    e2 = _subgraph_edge_count(graph, alive)
    if m2 and e2:
        threshold = Fraction(2 * e2, m2) / 4
        changed = True
        while changed:
            changed = False
            for v in bits(alive):
                if (graph.adj[v] & alive).bit_count() <= threshold:
                    alive &= ~(1 << v)
                    changed = True
    verts = sorted(bits(alive))
    return graph.induced(verts), verts


def _alternating_paths(bp: Bipartition, u: int, v: int, k: int) -> list[tuple[int, ...]]:
    """Simple paths of k crossing edges from u to v."""
    crossing = bp.crossing
    out: list[tuple[int, ...]] = []
    path = [u]

    def extend(used: int):
        if len(path) == k + 1:
            return
        last = path[-1]
        for w in bits(crossing.adj[last] & ~used):
            if len(path) == k:
                if w == v:
                    out.append(tuple(path) + (v,))
                continue
            if w == v:
                continue
            path.append(w)
            extend(used | (1 << w))
            path.pop()

    if u != v:
        extend(1 << u)
    return out


def alternating_path_stats(bp: Bipartition, u: int, v: int, k: int,
                           materialize: bool = False) -> PathStats:
    """Exact P, A, B counts over alternating k-edge paths between u and v."""
    if u == v:
        raise ValueError("endpoints must be distinct")
    paths = _alternating_paths(bp, u, v, k)
    graph = bp.graph
    interiors = [mask_of(p[1:-1]) for p in paths]
    nbhd = []
    for m in interiors:
        acc = 0
        for x in bits(m):
            acc |= graph.adj[x]
        nbhd.append(acc)
    p_count = len(paths)
    a_count = 0
    b_count = 0
    for i in range(p_count):
        for j in range(p_count):
            if i == j:
                a_count += 1  # self-pairs share every internal vertex
                continue
            if interiors[i] & interiors[j]:
                a_count += 1
            if nbhd[i] & interiors[j]:
                b_count += 1
    return PathStats(u, v, p_count, a_count, b_count,
                     tuple(paths) if materialize else None)


def default_red_blue_delta(t: int, c: Fraction) -> Fraction:
    """Largest power of 1/2 satisfying the selection inequality chain."""
    delta = Fraction(1, 2)
    for _ in range(200):
        lhs = (c ** 3 * delta ** -2 / 200 + c ** 2 * delta ** -1 / 20
               + c ** 3 * delta ** -2 / 1000 + 2 * c ** 2 * delta ** -1 / 100
               + t * t)
        if lhs < c ** 3 * delta ** -2 / 100:
            return delta
        delta /= 2
    raise PreconditionFailed("no feasible delta found")


def red_blue_select(n_items: int, red: Sequence[tuple[int, int]],
                    blue: Sequence[tuple[int, int]], c: Fraction, t: int,
                    seed: int, retries: int = 256,
                    delta: Optional[Fraction] = None) -> list[int]:
    """Subset S of >= t items with no red edge inside and >= (c/2)|S|^2 blue
    edges, by seeded p-sampling plus one-endpoint deletion per red edge."""
    if delta is None:
        delta = default_red_blue_delta(t, c)
        if n_items <= c / delta:
            raise PreconditionFailed("ground set too small for the sampling rate")
    red = [tuple(sorted(e)) for e in red]
    blue = [tuple(sorted(e)) for e in blue]
    if len(blue) < c * n_items * n_items:
        raise PreconditionFailed("too few blue edges")
    if len(red) > delta * n_items * n_items:
        raise PreconditionFailed("too many red edges")
    p = min(Fraction(1), c / delta / (10 * n_items))
    rng = random.Random(seed)
    for _ in range(retries):
        if p == 1:
            sample = set(range(n_items))
        else:
            sample = {i for i in range(n_items) if rng.random() < float(p)}
        e_r = [e for e in red if e[0] in sample and e[1] in sample]
        e_b = sum(1 for e in blue if e[0] in sample and e[1] in sample)
        size = len(sample)
        if not (e_b > c / 2 * size * size + size * len(e_r) + t * t):
            continue
        chosen = set(sample)
        for a, b in e_r:
            if a in chosen and b in chosen:
                chosen.discard(a)
        result = sorted(chosen)
        blue_inside = sum(1 for e in blue if e[0] in chosen and e[1] in chosen)
        if (len(result) >= t
                and not any(a in chosen and b in chosen for a, b in red)
                and blue_inside * 2 >= c * size * size):
            return result
    raise RetriesExhausted("sampling never met the selection inequality")


def _direct_alternating_cycle(bp: Bipartition, k: int) -> Optional[list[int]]:
    """Lexicographically first chordless alternating 2k-cycle, or None."""
    graph = bp.graph
    crossing = bp.crossing
    length = 2 * k

    def search(start: int) -> Optional[list[int]]:
        path = [start]
        above = ~((1 << (start + 1)) - 1)  # cycle minimum is the start

        def extend(used: int) -> Optional[list[int]]:
            pos = len(path)
            if pos == length - 1:
                closing = (crossing.adj[path[-1]] & crossing.adj[start]
                           & above & ~used)
                for w in bits(closing):
                    # chordless: w touches only its two cycle neighbours
                    bad = False
                    for x in path[1:-1]:
                        if graph.has_edge(w, x):
                            bad = True
                            break
                    if not bad:
                        return path + [w]
                return None
            for w in bits(crossing.adj[path[-1]] & above & ~used):
                ok = True
                for x in path[:-1]:
                    if graph.has_edge(w, x):
                        ok = False
                        break
                if ok:
                    path.append(w)
                    hit = extend(used | (1 << w))
                    if hit is not None:
                        return hit
                    path.pop()
            return None

        return extend(1 << start)

    for start in range(graph.n):
        hit = search(start)
        if hit is not None:
            return hit
    return None


def find_induced_alternating_cycle(bp: Bipartition, k: int, s: int,
                                   params: Optional[CycleParams] = None,
                                   seed: int = 0, *,
                                   cost_guard: int = 20_000_000,
                                   force_pipeline: bool = False) -> Witness:
    """Chordless alternating C_{2k}: exact search when affordable, else the
    constructive pipeline (almost-regular extraction, path-pair statistics,
    red-blue selection, and a K_{s,s} extraction on the selected paths)."""
    graph = bp.graph
    if params is None:
        params = CycleParams.for_cycle(k, s)
    delta_x = max(1, bp.crossing.max_degree())
    direct_cost = graph.n * delta_x ** (2 * k - 2)
    if direct_cost <= cost_guard and not force_pipeline:
        cyc = _direct_alternating_cycle(bp, k)
        if cyc is None:
            return Witness.not_found("no chordless alternating cycle")
        witness = Witness.induced_cycle(cyc)
        if not validate_witness(witness, graph):
            raise AssertionError("cycle search produced an invalid witness")
        return witness

    sub, verts = almost_regular_subgraph(graph, params, override_density=True)
    side = tuple(bp.side[v] for v in verts)
    sub_bp = Bipartition(sub, side)
    best: Optional[PathStats] = None
    for u in range(sub.n):
        for v in range(sub.n):
            if u == v:
                continue
            st = alternating_path_stats(sub_bp, u, v, k, materialize=True)
            if st.p == 0:
                continue
            if best is None or (st.b, -st.u, -st.v) > (best.b, -best.u, -best.v):
                best = st
    if best is None or best.p < 2:
        raise CostGuard("pipeline found no usable endpoint pair")
    paths = best.paths or ()
    interiors = [mask_of(p[1:-1]) for p in paths]
    red = [(i, j) for i in range(len(paths)) for j in range(i + 1, len(paths))
           if interiors[i] & interiors[j]]
    nbhd = []
    for m in interiors:
        acc = 0
        for x in bits(m):
            acc |= sub.adj[x]
        nbhd.append(acc)
    blue = [(i, j) for i in range(len(paths)) for j in range(i + 1, len(paths))
            if nbhd[i] & interiors[j]]
    c = Fraction(1, 32 * k)
    try:
        chosen = red_blue_select(len(paths), red, blue, c, t=2, seed=seed)
    except (PreconditionFailed, RetriesExhausted) as exc:
        raise CostGuard(f"red-blue selection failed: {exc}") from exc
    union = 0
    for i in chosen:
        union |= interiors[i]
    union |= (1 << best.u) | (1 << best.v)
    sub_verts = sorted(bits(union))
    kss = find_kss(sub.induced(sub_verts), s)
    if kss.found:
        left = [verts[sub_verts[i]] for i in kss.data["left"]]
        right = [verts[sub_verts[i]] for i in kss.data["right"]]
        return Witness.biclique(left, right)
    raise CostGuard("pipeline exhausted without a certificate")


def induced_path_fraction(bp: Bipartition, k: int,
                          cost_guard: int = 20_000_000) -> tuple[int, int]:
    """(induced, total) counts of directed alternating k-edge paths."""
    graph = bp.graph
    crossing = bp.crossing
    delta_x = max(1, crossing.max_degree())
    if graph.n * delta_x ** k > cost_guard:
        raise CostGuard("path enumeration exceeds the cost guard")
    total = 0
    induced = 0
    path: list[int] = []

    def extend(used: int, chordfree: bool):
        nonlocal total, induced
        if len(path) == k + 1:
            total += 1
            if chordfree:
                induced += 1
            return
        last = path[-1]
        for w in bits(crossing.adj[last] & ~used):
            chord = False
            for x in path[:-1]:
                if graph.has_edge(w, x):
                    chord = True
                    break
            path.append(w)
            extend(used | (1 << w), chordfree and not chord)
            path.pop()

    for start in range(graph.n):
        path.append(start)
        extend(1 << start, True)
        path.pop()
    return induced, total


def find_induced_cube(graph: Graph, s: int, seed: int = 0, *,
                      cost_guard: int = 20_000_000) -> Witness:
    """Induced 3-cube: pick a non-adjacent pair (u,v) maximizing induced
    alternating 3-paths, find a chordless alternating C6 between their
    private neighbourhoods, and assemble the 8-vertex certificate."""
    from .constructions import named_graph
    cube = named_graph("hypercube", 3)
    pairs = []
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if graph.has_edge(u, v):
                continue
            u_side = graph.adj[u] & ~graph.adj[v] & ~(1 << v)
            v_side = graph.adj[v] & ~graph.adj[u] & ~(1 << u)
            count = sum((graph.adj[x] & v_side).bit_count() for x in bits(u_side))
            if count:
                pairs.append((count, u, v, u_side, v_side))
    pairs.sort(key=lambda it: (-it[0], it[1], it[2]))
    for _, u, v, u_side, v_side in pairs:
        verts = sorted(bits(u_side | v_side))
        sub = graph.induced(verts)
        side = tuple((v_side >> w) & 1 == 1 for w in verts)
        try:
            cyc = find_induced_alternating_cycle(
                Bipartition(sub, side), 3, s, seed=seed, cost_guard=cost_guard)
        except CostGuard:
            continue
        if cyc.kind != "InducedCycle":
            continue
        cycle = [verts[i] for i in cyc.data["vertices"]]
        if (v_side >> cycle[0]) & 1:
            cycle = cycle[1:] + cycle[:1]  # start on u's side
        phi = {0: u, 7: v, 1: cycle[0], 3: cycle[1], 2: cycle[2],
               6: cycle[3], 4: cycle[4], 5: cycle[5]}
        witness = Witness.induced_copy(phi)
        if validate_witness(witness, graph, cube):
            return witness
    direct_cost = graph.n ** 4  # induced search with bitset pruning
    if direct_cost > cost_guard:
        raise CostGuard("no pipeline certificate and direct search too costly")
    return find_induced_copy(graph, cube)
