import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spandecomp.graph import (Graph, UnionFind, connected_components, extend_to_maximal_forest,
                              induced_subgraph, neighbor_set, spanning_forest, torso)

from conftest import path_graph, random_graph


def torso_by_paths(g, x):
    """Reference torso: u~v iff some u-v path has all inner vertices outside x."""
    x = frozenset(x)
    adj = g.adj
    edges = set()
    for u in x:
        seen = {u}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for y in adj[w]:
                if y in seen:
                    continue
                seen.add(y)
                if y in x:
                    edges.add(frozenset((u, y)))
                else:
                    queue.append(y)
    return Graph(x, [tuple(e) for e in edges])


@st.composite
def graphs_with_subsets(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    x = draw(st.sets(st.integers(0, n - 1))) if n else set()
    return Graph(range(n), edges), frozenset(x)


def test_induced_subgraph_examples():
    tri = Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    assert induced_subgraph(tri, {1, 2}) == Graph([1, 2], [(1, 2)])
    assert induced_subgraph(tri, tri.vertices) == tri
    with pytest.raises(ValueError):
        induced_subgraph(tri, {4})


def test_torso_examples():
    p = Graph([1, 2, 3], [(1, 2), (2, 3)])
    assert torso(p, {1, 3}) == Graph([1, 3], [(1, 3)])
    assert torso(p, p.vertices) == p
    assert torso(p, set()) == Graph([], [])
    with pytest.raises(ValueError):
        torso(p, {9})


def test_neighbor_set_examples():
    p = Graph([1, 2, 3], [(1, 2), (2, 3)])
    assert neighbor_set(p, {2}) == {1, 3}
    assert neighbor_set(p, p.vertices) == frozenset()


def test_components_examples():
    assert sorted(map(sorted, connected_components(Graph([1, 2], [])))) == [[1], [2]]
    assert connected_components(Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])) == [frozenset({1, 2, 3})]


def test_extend_to_maximal_forest_examples():
    assert extend_to_maximal_forest(Graph([1, 2], []), [(1, 2)]) == {(1, 2)}
    assert extend_to_maximal_forest(Graph([1, 2], [(1, 2)]), [(2, 1)]) == frozenset()
    with pytest.raises(ValueError):
        extend_to_maximal_forest(Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)]), [])


@given(graphs_with_subsets())
@settings(max_examples=200, deadline=None)
def test_torso_matches_path_definition(case):
    g, x = case
    assert torso(g, x) == torso_by_paths(g, x)


@given(graphs_with_subsets())
@settings(max_examples=200, deadline=None)
def test_torso_idempotent_and_neighbors_disjoint(case):
    g, x = case
    t = torso(g, x)
    assert torso(t, x) == t
    assert not neighbor_set(g, x) & x


@given(graphs_with_subsets())
@settings(max_examples=200, deadline=None)
def test_components_partition(case):
    g, _ = case
    comps = connected_components(g)
    assert sum(len(c) for c in comps) == len(g.vertices)
    assert frozenset().union(*comps) == g.vertices if comps else not g.vertices
    for c in comps:
        assert induced_subgraph(g, c).is_connected()


def test_maximal_forest_is_maximal(rng):
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        base = Graph(g.vertices, [])
        cands = sorted(g.edges)
        m = extend_to_maximal_forest(base, cands)
        f = Graph(g.vertices, m)
        assert f.is_acyclic()
        for e in set(cands) - m:
            assert not Graph(g.vertices, set(m) | {e}).is_acyclic()
        assert len(connected_components(f)) == len(connected_components(g))
        assert spanning_forest(g).edges == m


def test_union_find():
    uf = UnionFind(range(4))
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(2)


def test_graph_edges_imply_vertices_and_loops_are_rejected():
    assert Graph([1], [(1, 2)]).vertices == {1, 2}
    with pytest.raises(ValueError):
        Graph([1], [(1, 1)])


def test_path_graph_is_tree():
    g = path_graph(6)
    assert g.is_connected() and g.is_acyclic()
