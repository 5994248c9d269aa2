"""Finite simple undirected graphs over integer vertex ids.

Graphs are immutable: every operation returns a new :class:`Graph`.  Edges are
stored as ordered pairs ``(u, v)`` with ``u < v`` so that sorting an edge set
gives the lexicographic order used by :func:`extend_to_maximal_forest`.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Iterator

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """An immutable simple graph.

    >>> g = Graph([1, 2, 3], [(1, 2), (3, 2)])
    >>> sorted(g.edges)
    [(1, 2), (2, 3)]
    """

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        es = frozenset(edge(u, v) for u, v in edges)
        vs = set(vertices)
        for u, v in es:
            vs.add(u)
            vs.add(v)
        self.vertices: frozenset[int] = frozenset(vs)
        self.edges: frozenset[Edge] = es

    @classmethod
    def _trusted(cls, vertices: frozenset[int], edges: frozenset[Edge]) -> "Graph":
        g = cls.__new__(cls)
        g.vertices = vertices
        g.edges = edges
        return g

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(vertices={sorted(self.vertices)}, edges={sorted(self.edges)})"

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def union(self, other: "Graph") -> "Graph":
        return Graph._trusted(self.vertices | other.vertices, self.edges | other.edges)

    def add_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        """``G + F``: same vertex set, extra edges added."""
        es = frozenset(edge(u, v) for u, v in extra)
        for u, v in es:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {(u, v)} has an endpoint outside the graph")
        return Graph._trusted(self.vertices, self.edges | es)

    def remove_vertices(self, x: Iterable[int]) -> "Graph":
        """``G - X``."""
        return induced_subgraph(self, self.vertices - frozenset(x))

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def is_acyclic(self) -> bool:
        # a forest has exactly |V| - #components edges
        return len(self.edges) == len(self.vertices) - len(connected_components(self))


def _check_subset(g: Graph, x: Iterable[int]) -> frozenset[int]:
    xs = frozenset(x)
    unknown = xs - g.vertices
    if unknown:
        raise ValueError(f"unknown vertex ids: {sorted(unknown)}")
    return xs


def induced_subgraph(g: Graph, x: Iterable[int]) -> Graph:
    xs = _check_subset(g, x)
    if xs == g.vertices:
        return g
    if len(xs) * 4 < len(g.edges):
        adj = g.adj
        es = frozenset(edge(u, v) for u in xs for v in adj[u] if v in xs)
    else:
        es = frozenset(e for e in g.edges if e[0] in xs and e[1] in xs)
    return Graph._trusted(xs, es)


def neighbor_set(g: Graph, x: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``x`` with at least one neighbour in ``x``."""
    xs = _check_subset(g, x)
    adj = g.adj
    out: set[int] = set()
    for u in xs:
        out.update(adj[u])
    return frozenset(out - xs)


def _components_within(g: Graph, allowed: frozenset[int]) -> list[frozenset[int]]:
    adj = g.adj
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest member."""
    return _components_within(g, g.vertices)


def torso(g: Graph, x: Iterable[int]) -> Graph:
    """Graph on ``x`` where two vertices are adjacent iff some path joins them
    with every internal vertex outside ``x``."""
    xs = _check_subset(g, x)
    adj = g.adj
    es = {e for e in g.edges if e[0] in xs and e[1] in xs}
    for comp in _components_within(g, g.vertices - xs):
        attach: set[int] = set()
        for u in comp:
            attach.update(w for w in adj[u] if w in xs)
        ordered = sorted(attach)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                es.add((u, v))
    return Graph._trusted(xs, frozenset(es))


class UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, items: Iterable[int] = ()):
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        for it in items:
            self.add(it)

    def add(self, item: int) -> None:
        if item not in self.parent:
            self.parent[item] = item
            self.size[item] = 1

    def find(self, item: int) -> int:
        parent = self.parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def extend_to_maximal_forest(f: Graph, candidates: Iterable[tuple[int, int]]) -> frozenset[Edge]:
    """Greedily add candidate edges (in lexicographic order) to the forest ``f``.

    Returns the accepted set ``M``: ``f + M`` is acyclic and every rejected
    candidate would close a cycle.
    """
    uf = UnionFind(f.vertices)
    for u, v in f.edges:
        if not uf.union(u, v):
            raise ValueError("input graph contains a cycle")
    accepted = []
    for u, v in sorted({edge(a, b) for a, b in candidates}):
        if u not in uf.parent or v not in uf.parent:
            raise ValueError(f"candidate edge {(u, v)} has an endpoint outside the forest")
        if uf.union(u, v):
            accepted.append((u, v))
    return frozenset(accepted)


def spanning_forest(g: Graph) -> Graph:
    """Maximal acyclic spanning subgraph of ``g`` (lexicographic greedy)."""
    empty = Graph._trusted(g.vertices, frozenset())
    return Graph._trusted(g.vertices, extend_to_maximal_forest(empty, g.edges))


def iter_pairs(xs: Iterable[int]) -> Iterator[Edge]:
    ordered = sorted(xs)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            yield (u, v)
