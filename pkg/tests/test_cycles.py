"""Cycle counting, almost-regular extraction, alternating-path machinery."""

import random as _random
from fractions import Fraction

import pytest

from conftest import naive_hom_cycle
from turanlab.constructions import (alternating_cycle_bipartition, named_graph,
                                    pp_incidence, random_graph)
from turanlab.cycles import (CycleParams, alternating_path_stats,
                             almost_regular_subgraph, default_red_blue_delta,
                             degenerate_bound_holds, find_induced_cube,
                             find_induced_alternating_cycle,
                             hom_cycle_count, induced_path_fraction,
                             nondegenerate_cycle_count, red_blue_select,
                             sidorenko_holds)
from turanlab.errors import CostGuard, PreconditionFailed, TooLarge
from turanlab.graphs import Bipartition, Graph, two_colour
from turanlab.solver import enumerate_up_to_iso
from turanlab.witness import validate_witness


def test_cycle_params():
    p = CycleParams.for_cycle(3, 2)
    assert p.alpha == Fraction(1, 3)
    assert p.big_k == 2 ** 14
    assert p.c0 == Fraction(1, 4)
    q = CycleParams(k=2, alpha=Fraction(1, 2), c=Fraction(1), s=2)
    assert q.big_k == 2 ** 11
    with pytest.raises(ValueError):
        CycleParams(k=1, alpha=Fraction(1), c=Fraction(1), s=2)


def test_hom_cycle_examples():
    assert hom_cycle_count(named_graph("complete", 2), 2) == 2
    assert hom_cycle_count(named_graph("complete", 3), 2) == 18
    assert hom_cycle_count(named_graph("cycle", 4), 2) == 32
    assert hom_cycle_count(named_graph("empty", 5), 3) == 0


def test_hom_matches_naive_exhaustive():
    # closed-walk counts are isomorphism invariants, so running over
    # representatives covers every graph on up to five vertices
    for n in range(1, 6):
        for g in enumerate_up_to_iso(n):
            for k in (2, 3, 4):
                assert hom_cycle_count(g, k) == naive_hom_cycle(g, k)


def test_nondegenerate_examples():
    assert nondegenerate_cycle_count(named_graph("cycle", 4), 2) == (8, 24)
    assert nondegenerate_cycle_count(named_graph("complete", 3), 2) == (0, 18)
    assert nondegenerate_cycle_count(named_graph("complete", 4), 2) == (24, 60)


def test_nondegenerate_cost_guard():
    big = named_graph("complete", 40)
    with pytest.raises(TooLarge):
        nondegenerate_cycle_count(big, 4, cost_guard=10 ** 6)


def test_sidorenko_grid():
    for seed in range(50):
        n = 8 + seed % 5
        p = 0.2 + 0.15 * (seed % 5)
        g = random_graph(n, p, 3000 + seed)
        for k in (2, 3, 4):
            assert sidorenko_holds(g, k)


def test_degenerate_bound_grid():
    for seed in range(25):
        g = random_graph(9, 0.4, 4000 + seed)
        if g.edge_count() == 0:
            continue
        for k in (2, 3):
            assert degenerate_bound_holds(g, k)
    assert degenerate_bound_holds(named_graph("cycle", 6), 3)


def test_gluing_inequalities_small_bipartitions():
    # a closed 2k-walk with distinct vertices splits into two internally
    # disjoint k-paths, so the nondegenerate count is at most the sum of
    # squared path counts, which is at most the closed-walk count
    for n in (6, 8):
        bp = alternating_cycle_bipartition(n)
        for k in (2, 3):
            total_sq = 0
            for u in range(n):
                for v in range(n):
                    if u != v:
                        total_sq += alternating_path_stats(bp, u, v, k).p ** 2
            nd, _ = nondegenerate_cycle_count(bp.crossing, k)
            hom = hom_cycle_count(bp.crossing, k)
            assert nd <= total_sq <= hom


def test_alternating_path_stats_examples():
    bp = alternating_cycle_bipartition(6)
    st = alternating_path_stats(bp, 0, 2, 2)
    assert (st.p, st.a, st.b) == (1, 1, 0)
    k22 = named_graph("complete_bipartite", 2, 2)
    bp2 = Bipartition(k22, (False, False, True, True))
    s2 = alternating_path_stats(bp2, 0, 1, 2)
    assert (s2.p, s2.a, s2.b) == (2, 2, 0)
    with pytest.raises(ValueError):
        alternating_path_stats(bp, 3, 3, 2)


def test_path_stats_materialize():
    bp = alternating_cycle_bipartition(8)
    st = alternating_path_stats(bp, 0, 4, 4, materialize=True)
    assert st.p == len(st.paths) == 2
    for p in st.paths:
        assert p[0] == 0 and p[-1] == 4 and len(p) == 5


def test_default_red_blue_delta():
    d = default_red_blue_delta(2, Fraction(1, 4))
    assert d == Fraction(1, 2 ** 9)
    assert d.numerator == 1 and (d.denominator & (d.denominator - 1)) == 0


def test_red_blue_whole_ground_set():
    n = 10
    blue = [(i, j) for i in range(n) for j in range(i + 1, n)]
    c = Fraction(1, 4)
    chosen = red_blue_select(n, [], blue, c, 2, seed=0,
                             delta=c / (10 * n))
    assert len(chosen) >= 2
    inside = sum(1 for a, b in blue if a in chosen and b in chosen)
    assert 2 * inside >= c * len(chosen) ** 2


def test_red_blue_too_few_blue():
    with pytest.raises(PreconditionFailed):
        red_blue_select(6, [], [], Fraction(1, 4), 2, seed=0,
                        delta=Fraction(1, 100))


def test_red_blue_default_delta_needs_large_ground_set():
    blue = [(i, j) for i in range(10) for j in range(i + 1, 10)]
    with pytest.raises(PreconditionFailed):
        red_blue_select(10, [], blue, Fraction(1, 96), 2, seed=0)


def test_red_blue_postcondition_seeded():
    c = Fraction(1, 8)
    for seed in range(20):
        rng = _random.Random(seed)
        n = 12
        blue = [(i, j) for i in range(n) for j in range(i + 1, n)
                if rng.random() < 0.6]
        if len(blue) < c * n * n:
            continue
        chosen = red_blue_select(n, [], blue, c, 2, seed=seed,
                                 delta=c / (10 * n))
        assert len(chosen) >= 2
        inside = sum(1 for a, b in blue if a in chosen and b in chosen)
        assert 2 * inside >= c * len(chosen) ** 2


def test_red_blue_removes_red_edges():
    n = 170
    blue = [(i, j) for i in range(n) for j in range(i + 1, n)]
    red = [(0, 1), (2, 3)]
    c = Fraction(1, 8)
    chosen = red_blue_select(n, red, blue, c, 2, seed=1, delta=c / (10 * n))
    assert not any(a in chosen and b in chosen for a, b in red)


def test_find_induced_alternating_cycle_on_cycles():
    for n in (6, 8):
        bp = alternating_cycle_bipartition(n)
        w = find_induced_alternating_cycle(bp, n // 2, 2, seed=0)
        assert w.kind == "InducedCycle"
        assert w.data["vertices"] == list(range(n))
        assert validate_witness(w, bp.graph)


def test_find_induced_alternating_cycle_incidence_graph():
    bp = pp_incidence(3)
    w = find_induced_alternating_cycle(bp, 3, 2, seed=0)
    assert w.kind == "InducedCycle" and len(w.data["vertices"]) == 6
    assert validate_witness(w, bp.graph)


def test_find_induced_alternating_cycle_tree_not_found():
    tree = named_graph("tree_from_pruefer", (0, 1, 2, 3))
    bp = Bipartition(tree, two_colour(tree))
    w = find_induced_alternating_cycle(bp, 3, 2, seed=0)
    assert w.kind == "NotFound"


def test_forced_pipeline_hits_cost_guard_small_host():
    bp = alternating_cycle_bipartition(8)
    with pytest.raises(CostGuard):
        find_induced_alternating_cycle(bp, 4, 2, seed=0, force_pipeline=True)


def test_induced_path_fraction_examples():
    bp = alternating_cycle_bipartition(6)
    assert induced_path_fraction(bp, 3) == (12, 12)
    k22 = named_graph("complete_bipartite", 2, 2)
    bp2 = Bipartition(k22, (False, False, True, True))
    assert induced_path_fraction(bp2, 2) == (8, 8)
    edge = named_graph("complete", 2)
    bpe = Bipartition(edge, (False, True))
    assert induced_path_fraction(bpe, 1) == (2, 2)


def test_induced_path_fraction_sees_chords():
    # a chord inside one side of the bipartition kills inducedness
    g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (0, 1)])
    bp = Bipartition(g, (False, False, True, True))
    induced, total = induced_path_fraction(bp, 2)
    assert induced < total


def test_find_induced_cube_on_hypercubes():
    q3 = named_graph("hypercube", 3)
    w = find_induced_cube(q3, 2, seed=0)
    assert w.kind == "InducedCopy"
    assert validate_witness(w, q3, q3)
    q4 = named_graph("hypercube", 4)
    w4 = find_induced_cube(q4, 2, seed=0)
    assert w4.kind == "InducedCopy"
    assert validate_witness(w4, q4, q3)


def test_find_induced_cube_not_found():
    assert find_induced_cube(named_graph("complete", 5), 2).kind == "NotFound"
    assert find_induced_cube(named_graph("empty", 10), 2).kind == "NotFound"


def test_almost_regular_on_regular_graph():
    c8 = named_graph("cycle", 8)
    params = CycleParams(k=2, alpha=Fraction(1, 2), c=Fraction(1), s=2)
    sub, verts = almost_regular_subgraph(c8, params, override_density=True)
    assert sub.n >= 2 and sub.edge_count() >= 1
    assert sub.max_degree() <= params.big_k * max(1, sub.min_degree())


def test_almost_regular_density_gate():
    sparse = named_graph("path", 6)
    params = CycleParams(k=2, alpha=Fraction(1, 2), c=Fraction(1), s=2)
    with pytest.raises(PreconditionFailed):
        almost_regular_subgraph(sparse, params)


def test_almost_regular_star_collapses():
    star = named_graph("complete_bipartite", 1, 50)
    params = CycleParams(k=2, alpha=Fraction(1), c=Fraction(1), s=2)
    sub, verts = almost_regular_subgraph(star, params, override_density=True)
    assert sub.max_degree() <= params.big_k * max(1, sub.min_degree())


def test_almost_regular_incidence_graph():
    g = pp_incidence(4).graph
    params = CycleParams(k=3, alpha=Fraction(1, 3), c=Fraction(1), s=2)
    sub, verts = almost_regular_subgraph(g, params, override_density=True)
    assert sub.edge_count() >= 1
    assert sub.max_degree() <= params.big_k * max(1, sub.min_degree())
    assert set(verts) <= set(range(g.n))
    # extracted subgraph really is the induced one
    assert sub.key() == g.induced(sorted(verts)).key()
