from itertools import permutations

import pytest

from spandecomp.graph import Graph
from spandecomp.interface import glue
from spandecomp.pathdec import (InstanceTooLarge, PathDecomposition, exact_pathwidth, interval_coloring,
                                interval_supergraph, make_nice, optimal_path_decomposition, to_interface_word,
                                validate_pathdec)
from spandecomp.verification import gen_random_pathdec

from conftest import complete_graph, cycle_graph, path_graph, random_graph

P3 = Graph([1, 2, 3], [(1, 2), (2, 3)])


def pathwidth_by_orders(g):
    """Reference: minimum over vertex orders of the vertex separation number."""
    vs = sorted(g.vertices)
    if not vs:
        return 0
    adj = g.adj
    best = len(vs)
    for order in permutations(vs):
        placed = set()
        worst = 0
        for v in order:
            placed.add(v)
            worst = max(worst, sum(1 for u in placed if adj[u] - placed))
        best = min(best, worst)
    return best


def test_validate_examples():
    r = validate_pathdec(P3, PathDecomposition([{1, 2}, {2, 3}]))
    assert r.ok
    assert PathDecomposition([{1, 2}, {2, 3}]).width == 1
    r = validate_pathdec(P3, PathDecomposition([{1, 2}, {3}]))
    assert not r.ok
    assert any("2" in w and "3" in w for _, w in r.violations)


def test_validate_detects_broken_interval():
    r = validate_pathdec(P3, PathDecomposition([{1, 2}, {3}, {2, 3}]))
    assert not r.ok


def test_make_nice_examples():
    nice = make_nice(PathDecomposition([{1, 2}, {2, 3}]), P3)
    assert list(nice.bags) == [{1, 2}, {2}, {2, 3}]
    assert validate_pathdec(P3, nice).ok and nice.is_nice()
    again = make_nice(nice, P3)
    assert again == nice


def test_make_nice_rejects_invalid():
    with pytest.raises(ValueError):
        make_nice(PathDecomposition([{1, 2}, {3}]), P3)


def test_make_nice_preserves_validity_and_width(rng):
    for seed in range(40):
        g, p = gen_random_pathdec(rng.choice((1, 2, 3)), rng.randint(1, 15), rng.random(), seed)
        nice = make_nice(p, g)
        assert nice.is_nice() and validate_pathdec(g, nice).ok
        assert nice.width <= p.width


def test_exact_pathwidth_examples():
    assert exact_pathwidth(path_graph(5)) == 1
    assert exact_pathwidth(cycle_graph(5)) == 2
    assert exact_pathwidth(Graph([], [])) == 0
    assert exact_pathwidth(Graph([0], [])) == 0


def test_exact_pathwidth_matches_order_enumeration(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        assert exact_pathwidth(g) == pathwidth_by_orders(g)


def test_optimal_path_decomposition_is_valid_and_optimal(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        p = optimal_path_decomposition(g)
        assert validate_pathdec(g, p).ok
        assert p.width == exact_pathwidth(g)


def test_exact_pathwidth_guard():
    with pytest.raises(InstanceTooLarge):
        exact_pathwidth(complete_graph(13))


def test_interval_coloring_examples():
    nice = PathDecomposition([{1, 2}, {2}, {2, 3}])
    assert interval_coloring(P3, nice, 2) == {1: 1, 2: 2, 3: 1}
    assert interval_coloring(Graph([5], []), PathDecomposition([{5}]), 1) == {5: 1}
    with pytest.raises(ValueError):
        interval_coloring(P3, PathDecomposition([{1, 2, 3}]), 2)


def test_interval_coloring_injective_on_bags(rng):
    for seed in range(40):
        k = rng.choice((1, 2, 3))
        g, p = gen_random_pathdec(k, rng.randint(1, 20), rng.random(), seed)
        phi = interval_coloring(g, p, k)
        for bag in p.bags:
            assert len({phi[v] for v in bag}) == len(bag)
            assert all(1 <= phi[v] <= k for v in bag)


def test_interface_word_examples():
    single = to_interface_word(Graph([4], []), PathDecomposition([{4}]), {4: 1}, 1)
    assert len(single) == 1
    assert single[0].left == single[0].right == frozenset()
    nice = PathDecomposition([{1, 2}, {2}, {2, 3}])
    word = to_interface_word(P3, nice, interval_coloring(P3, nice, 2), 2)
    assert len(word) == 3 and all(a.is_basic() for a in word)
    whole = glue(word)
    assert whole.g == P3


def test_interface_word_rejects_non_nice():
    p = PathDecomposition([{1, 2}, {2, 3}])
    with pytest.raises(ValueError):
        to_interface_word(P3, p, {1: 1, 2: 2, 3: 1}, 2)


def test_interval_supergraph_contains_graph(rng):
    for seed in range(20):
        g, p = gen_random_pathdec(3, rng.randint(1, 20), rng.random(), seed)
        assert g.edges <= interval_supergraph(p).edges
