"""Induced-embedding pipelines: dependent random choice, rich independent
sets via the superspread machinery, greedy pattern embedding, induced tree
embedding in C4-free hosts, and the independent-set-or-biclique witness.

The textbook parameter defaults are astronomically large, so every entry
point accepts explicit overrides; postconditions are asserted exactly on
whatever parameters were used.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (AllEdgesBad, InequalityFails, NoIndependentSets,
                     NoViableCandidate, PatternPresent, PipelineStageError,
                     PreconditionFailed, RetriesExhausted, TooSparse)
from .graphs import Graph, PatternSpec, bits, mask_of
from .hypergraphs import SpreadParams, UniformHypergraph, clean_to_superspread
from .search import (check_rich_set, common_neighborhood_mask,
                     enumerate_independent_sets, find_induced_copy, find_kss)
from .witness import Witness, validate_witness

_NOT_FOUND_CLASS = (InequalityFails, RetriesExhausted, NoIndependentSets,
                    AllEdgesBad, NoViableCandidate, TooSparse)


@dataclass
class EmbedParams:
    """Pipeline parameters; defaults follow the bounded-degree analysis."""

    s: int
    k: int
    m: int
    ell: int
    theta: int
    t: int

    @staticmethod
    def defaults(spec: PatternSpec, s: int) -> "EmbedParams":
        ch, h, b, k = spec.ch, spec.h, spec.b, spec.k
        return EmbedParams(
            s=s, k=k,
            m=(ch * s) ** (2 * h),
            ell=(ch * s) ** (4 * h + 10),
            theta=(4 * b * s) ** b,
            t=k)


@dataclass
class EmbedTrace:
    """Ordered log of pipeline phase outcomes and candidate-set sizes."""

    phases: list[dict] = field(default_factory=list)

    def log(self, phase: str, **info) -> None:
        self.phases.append({"phase": phase, **info})

    def to_json(self) -> list[dict]:
        return list(self.phases)


def dependent_random_choice(graph: Graph, k: int, t: int, m: int, ell: int,
                            seed: int, *, check_inequality: bool = True,
                            retries: int = 64) -> list[int]:
    """Vertex set X with |X| >= ell whose k-subsets all have >= m common
    neighbours; seeded sampling with deterministic repair."""
    n = graph.n
    if check_inequality:
        if n == 0 or graph.edge_count() == 0:
            raise InequalityFails("average degree is zero")
        d = Fraction(2 * graph.edge_count(), n)
        lhs = d ** t / Fraction(n) ** (t - 1) - math.comb(n, k) * Fraction(m, n) ** t
        if lhs < ell:
            raise InequalityFails(
                f"d^t/n^(t-1) - C(n,k)(m/n)^t = {float(lhs):.4g} < ell={ell}")
    rng = random.Random(seed)
    for _ in range(retries):
        sample = [rng.randrange(n) for _ in range(t)]
        x_mask = common_neighborhood_mask(graph, mask_of(sample))
        x = sorted(bits(x_mask))
        while True:
            doomed: set[int] = set()
            for sub in itertools.combinations(x, k):
                cn = common_neighborhood_mask(graph, mask_of(sub))
                if cn.bit_count() < m:
                    doomed.add(max(sub))
            if not doomed:
                break
            x = [v for v in x if v not in doomed]
        if len(x) >= ell:
            return x
    raise RetriesExhausted(f"no qualifying X within {retries} seeded samples")


def _is_bad_tuple(graph: Graph, tup: tuple[int, ...], i: int, s: int) -> bool:
    """Tuple (v1..vl) is bad at index i when S = N(v1..vi) \\ U N(v_{i+1..l-1})
    has >= 2s vertices and v_l misses fewer than |S|/2s of them."""
    ell = len(tup)
    s_mask = common_neighborhood_mask(graph, mask_of(tup[:i]))
    for v in tup[i:ell - 1]:
        s_mask &= ~graph.adj[v]
    size = s_mask.bit_count()
    if size < 2 * s:
        return False
    missed = (s_mask & ~graph.adj[tup[-1]]).bit_count()
    return missed * 2 * s < size


def edge_has_bad_tuple(graph: Graph, edge: Iterable[int], k: int, s: int) -> bool:
    members = sorted(edge)
    t = len(members)
    for ell in range(2, t + 1):
        for tup in itertools.permutations(members, ell):
            for i in range(1, min(k, ell - 1) + 1):
                if _is_bad_tuple(graph, tup, i, s):
                    return True
    return False


def find_rich_independent_set(graph: Graph, x: Iterable[int], a: int, k: int,
                              s: int, theta: int, seed: int, *,
                              spread: Optional[SpreadParams] = None,
                              cap: int = 2000, clean_retries: int = 16,
                              check_hypothesis: bool = False) -> Witness:
    """Independent a-set in X passing the richness check, extracted from a
    cleaned superspread family of independent sets with bad tuples discarded."""
    xs = sorted(set(x))
    params = spread if spread is not None else SpreadParams.defaults(a, s)
    r = params.r
    independents = enumerate_independent_sets(graph, xs, r, cap)
    if not independents:
        raise NoIndependentSets(f"no independent {r}-sets in X")
    base = UniformHypergraph(graph.n, r, tuple(frozenset(e) for e in independents))
    cleaned = None
    last_error: Optional[Exception] = None
    for attempt in range(clean_retries):
        try:
            cleaned = clean_to_superspread(base, params, seed + attempt,
                                           check_hypothesis=check_hypothesis)
            break
        except Exception as exc:  # StuckBelowUniformity: unlucky partition
            last_error = exc
    if cleaned is None:
        raise AllEdgesBad(f"cleaning failed on every seed: {last_error}")
    survivors = [e for e in cleaned.edges
                 if not edge_has_bad_tuple(graph, e, k, s)]
    if not survivors:
        raise AllEdgesBad("every superspread edge contains a bad tuple")
    for e in survivors:
        for trimmed in itertools.combinations(sorted(e), a):
            w = check_rich_set(graph, trimmed, k, theta)
            if w.found:
                return w
    raise AllEdgesBad("no surviving edge passes the richness check")


def greedy_induced_embed(graph: Graph, independent: Iterable[int],
                         spec: PatternSpec, s: int,
                         trace: Optional[EmbedTrace] = None) -> Witness:
    """Embed H with A on the given rich independent set, extending over B by
    the candidate-preserving greedy rule."""
    i_list = sorted(independent)
    if len(i_list) != spec.a:
        raise ValueError("independent set size must equal |A|")
    i_mask = mask_of(i_list)
    if any(graph.adj[v] & i_mask for v in i_list):
        raise ValueError("anchor set is not independent")
    phi = {u: i_list[idx] for idx, u in enumerate(spec.side_a)}

    target = {}
    for bj in spec.side_b:
        target[bj] = mask_of(phi[u] for u in bits(spec.pattern.adj[bj])
                             if u in phi)
    cands = {}
    for bj in spec.side_b:
        mask = 0
        for v in range(graph.n):
            if (i_mask >> v) & 1:
                continue
            if graph.adj[v] & i_mask == target[bj]:
                mask |= 1 << v
        cands[bj] = mask

    order = list(spec.side_b)
    for step, bj in enumerate(order):
        rest = order[step + 1:]
        chosen = None
        for v in bits(cands[bj]):
            ok = True
            for bl in rest:
                u = cands[bl]
                size = u.bit_count()
                if size and (u & ~graph.adj[v]).bit_count() * 2 * s < size:
                    ok = False
                    break
            if ok:
                chosen = v
                break
        if chosen is None:
            raise NoViableCandidate(
                f"no candidate for pattern vertex {bj} preserves the ledger")
        if trace is not None:
            trace.log("embed-step", pattern_vertex=bj, image=chosen,
                      candidates={str(bl): cands[bl].bit_count() for bl in rest})
        phi[bj] = chosen
        kill = graph.adj[chosen] | (1 << chosen)
        for bl in rest:
            cands[bl] &= ~kill
    witness = Witness.induced_copy(phi)
    if not validate_witness(witness, graph, spec.pattern):
        raise AssertionError("greedy embedding produced an invalid copy")
    return witness


def bounded_degree_pipeline(graph: Graph, spec: PatternSpec, s: int,
                            mode: str, seed: int,
                            overrides: Optional[dict] = None,
                            trace: Optional[EmbedTrace] = None) -> Witness:
    """Chain DRC -> rich independent set -> greedy embedding, with a K_{s,s}
    sanity gate; NotFound-class stage failures are returned, not raised."""
    if mode not in ("i", "ii"):
        raise ValueError("mode must be 'i' or 'ii'")
    ov = overrides or {}
    trace = trace if trace is not None else EmbedTrace()
    n, e = graph.n, graph.edge_count()
    ch, h, k = spec.ch, spec.h, spec.k

    gate = find_kss(graph, s)
    if gate.found:
        trace.log("gate", result="biclique")
        return gate

    if mode == "i":
        t = ov.get("t", k)
        ell = ov.get("ell", (ch * s) ** (4 * h + 10))
        m = ov.get("m", (ch * s) ** (2 * h))
        if not ov and e ** k < (ch * s) ** ((4 * h + 10) * k) * n ** (2 * k - 1):
            raise PreconditionFailed("mode i edge-count hypothesis fails")
    else:
        t = ov.get("t", 2 * k)
        root = math.isqrt(n)
        ell = ov.get("ell", root)
        m = ov.get("m", root)
        if not ov and (n < (ch * s) ** (8 * h + 20)
                       or e ** (4 * k) < n ** (8 * k - 1)):
            raise PreconditionFailed("mode ii hypotheses fail")
    theta = ov.get("theta", (4 * spec.b * s) ** spec.b)
    spread = ov.get("spread")

    try:
        x = dependent_random_choice(graph, k, t, m, ell, seed,
                                    check_inequality=not ov)
        trace.log("drc", size=len(x))
    except _NOT_FOUND_CLASS as exc:
        return Witness("NotFound", {"stage": "DRC", "reason": str(exc)})
    except Exception as exc:
        raise PipelineStageError("DRC", exc) from exc
    try:
        rich = find_rich_independent_set(
            graph, x, spec.a, k, s, theta, seed,
            spread=spread, check_hypothesis=bool(ov.get("check_hypothesis", False)))
        trace.log("rich", vertices=rich.data["vertices"])
    except _NOT_FOUND_CLASS as exc:
        return Witness("NotFound", {"stage": "rich", "reason": str(exc)})
    except Exception as exc:
        raise PipelineStageError("rich", exc) from exc
    try:
        return greedy_induced_embed(graph, rich.data["vertices"], spec, s, trace)
    except _NOT_FOUND_CLASS as exc:
        return Witness("NotFound", {"stage": "embed", "reason": str(exc)})
    except Exception as exc:
        raise PipelineStageError("embed", exc) from exc


def embed_tree_c4free(graph: Graph, tree: Graph, *,
                      verify_c4_free: bool = True) -> Witness:
    """Induced tree embedding after peeling to minimum degree >= 2t."""
    t = tree.n
    if tree.edge_count() != t - 1:
        raise ValueError("pattern is not a tree (edge count)")
    if verify_c4_free:
        c4 = find_kss(graph, 2)
        if c4.found:
            raise PreconditionFailed("host contains C4 (a K_{2,2})")

    alive = graph.full_mask
    changed = True
    while changed and alive:
        changed = False
        for v in bits(alive):
            if (graph.adj[v] & alive).bit_count() < 2 * t:
                alive &= ~(1 << v)
                changed = True
    if not alive:
        raise TooSparse("degree peeling emptied the graph")

    # BFS order: each tree vertex after the first attaches to a placed parent
    order = [0]
    parent = {0: None}
    queue = [0]
    while queue:
        u = queue.pop(0)
        for w in bits(tree.adj[u]):
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(order) != t:
        raise ValueError("pattern is not a tree (disconnected)")

    phi: dict[int, int] = {}
    used = 0
    for u in order:
        if parent[u] is None:
            v = next(bits(alive))
        else:
            cand = graph.adj[phi[parent[u]]] & alive & ~used
            for w in phi.values():
                if w != phi[parent[u]]:
                    cand &= ~graph.adj[w]
            if not cand:
                raise NoViableCandidate(f"no image for tree vertex {u}")
            v = next(bits(cand))
        phi[u] = v
        used |= 1 << v
    witness = Witness.induced_copy(phi)
    if not validate_witness(witness, graph, tree):
        raise AssertionError("tree embedding produced an invalid copy")
    return witness


def greedy_independent_set(graph: Graph) -> list[int]:
    """Delete a maximum-degree vertex (lowest index on ties) until no edges
    remain; the survivors form an independent set."""
    alive = graph.full_mask
    while True:
        best_v, best_d = -1, 0
        for v in bits(alive):
            d = (graph.adj[v] & alive).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            return sorted(bits(alive))
        alive &= ~(1 << best_v)


def eh_witness(graph: Graph, spec: PatternSpec) -> Witness:
    """Independent set or biclique in an induced-H-free host; the biclique
    size target follows s = n^(1/(8h+20)) / h^2, floored with minimum 1."""
    if find_induced_copy(graph, spec.pattern).found:
        raise PatternPresent("host contains an induced copy of the pattern")
    n, h = graph.n, spec.h
    exp = 8 * h + 20
    root = 1
    while (root + 1) ** exp <= n:
        root += 1
    s = max(1, root // (h * h))
    kss = find_kss(graph, s)
    if kss.found:
        return kss
    ind = greedy_independent_set(graph)
    witness = Witness.independent_set(ind)
    if not validate_witness(witness, graph):
        raise AssertionError("greedy independent set is not independent")
    return witness
