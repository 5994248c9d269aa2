"""Suitable forest decompositions.

A forest decomposition ``(F, W)`` of ``G`` is *suitable* when ``F`` is a
spanning subgraph of ``G`` and every vertex lies in its own bag.  For a
connected graph ``F`` is then a spanning tree, so the result is a tree
decomposition indexed by a spanning tree of the graph itself.

:func:`decompose` builds one from a path decomposition: the bags become a word
of abstractions, the word gets a factorization tree of bounded height, and the
tree is walked bottom-up combining decompositions of the pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graph import (Graph, connected_components, extend_to_maximal_forest, induced_subgraph,
                    neighbor_set, spanning_forest)
from .interface import InterfaceGraph, abstraction, abstraction_bound
from .pathdec import PathDecomposition, interval_coloring, make_nice, to_interface_word, validate_pathdec
from .semigroup import Binary, FactorTree, Leaf, SemigroupTable, Unranked, factorize, generate_subsemigroup


class InvariantError(RuntimeError):
    """An internal invariant of the construction failed: this is a bug."""


@dataclass(frozen=True)
class ForestDecomposition:
    forest: Graph
    bags: Mapping[int, frozenset[int]]

    @property
    def vertices(self) -> frozenset[int]:
        return self.forest.vertices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=1) - 1

    def bag(self, x: int) -> frozenset[int]:
        return self.bags[x]


EMPTY = ForestDecomposition(Graph(), {})


def component_decomposition(g: Graph) -> ForestDecomposition:
    """Maximal spanning forest, each bag the vertex's component."""
    bags = {}
    for comp in connected_components(g):
        for v in comp:
            bags[v] = comp
    return ForestDecomposition(spanning_forest(g), bags)


def base_decompose(a: InterfaceGraph, x: frozenset[int] = frozenset()) -> ForestDecomposition:
    x = frozenset(x)
    if not x <= a.left:
        raise ValueError(f"removed set {sorted(x)} is not inside the left interface {sorted(a.left)}")
    return component_decomposition(a.g.remove_vertices(x))


SPREAD_MODES = ("paths", "component")


def _check_spread(spread: str) -> None:
    if spread not in SPREAD_MODES:
        raise ValueError(f"spread must be one of {SPREAD_MODES}, got {spread!r}")


def _component_map(forest: Graph) -> dict[int, frozenset[int]]:
    out = {}
    for comp in connected_components(forest):
        for v in comp:
            out[v] = comp
    return out


def _paths_to(forest: Graph, source: int, targets) -> set[int]:
    """Nodes on the forest paths from ``source`` to each target."""
    parent = {source: None}
    stack = [source]
    adj = forest.adj
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    out = set()
    for t in targets:
        if t not in parent:
            raise InvariantError(f"{t} is not connected to {source} in the forest")
        while t is not None and t not in out:
            out.add(t)
            t = parent[t]
    return out


def _augment(bags: dict[int, set[int]], forest: Graph, sources: dict[int, frozenset[int]],
             spread: str) -> None:
    """Add each source vertex ``u`` to bags of ``forest`` so that ``u`` reaches the
    bags of all its targets.

    ``"component"`` adds ``u`` to every bag of its tree; ``"paths"`` only to the
    bags on the tree paths from ``u`` to its targets.  The second gives subsets
    of the first, so every width bound for the first also holds for it.
    """
    if spread == "component":
        comp = _component_map(forest)
        for u in sources:
            for node in comp[u]:
                bags[node].add(u)
    else:
        for u, targets in sources.items():
            for node in _paths_to(forest, u, targets):
                bags[node].add(u)


def merge_partition(d_a: ForestDecomposition, d_b: ForestDecomposition, g: Graph,
                    b: frozenset[int], spread: str = "paths") -> ForestDecomposition:
    """Combine decompositions of ``g[A]`` and ``g[B]`` for a near partition ``{A, B}``.

    The forests are joined by a maximal acyclic set of A-B edges (lexicographic
    greedy).  Each vertex of ``N_g(B)`` is then spread over the joined forest
    towards its neighbours in ``B``, so every bag grows by at most ``|N_g(B)|``.
    """
    _check_spread(spread)
    b = frozenset(b)
    a = g.vertices - b
    if not b <= g.vertices:
        raise ValueError(f"{sorted(b - g.vertices)} are not vertices of the graph")
    if d_a.vertices != a or d_b.vertices != b:
        raise ValueError("decompositions do not index the two sides of the near partition")
    if not a:
        return d_b
    if not b:
        return d_a
    joined = d_a.forest.union(d_b.forest)
    adj = g.adj
    cross = [(u, v) for u in b for v in adj[u] if v in a]
    forest = joined.add_edges(extend_to_maximal_forest(joined, cross))
    bags = {x: set(d_a.bags[x] if x in a else d_b.bags[x]) for x in g.vertices}
    _augment(bags, forest, {u: adj[u] & b for u in neighbor_set(g, b)}, spread)
    return ForestDecomposition(forest, {x: frozenset(bag) for x, bag in bags.items()})


def add_back(d: ForestDecomposition, g: Graph, x: frozenset[int], spread: str = "paths") -> ForestDecomposition:
    """Extend a decomposition of ``g - x`` to one of ``g`` adding at most ``|x|`` to the width.

    Bags of the vertices of ``x`` stay inside ``x``.
    """
    x = frozenset(x)
    if not x:
        return d
    if d.vertices != g.vertices - x:
        raise ValueError("decomposition does not index g - x")
    return merge_partition(component_decomposition(induced_subgraph(g, x)), d, g, g.vertices - x, spread)


@dataclass(frozen=True)
class NodeCheck:
    """Width record for one node of the recursion."""

    start: int
    stop: int
    kind: str
    height: int
    width: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.width <= self.bound


@dataclass
class Certificate:
    decomposition: ForestDecomposition
    k: int
    height: int
    semigroup_size: int
    tree: FactorTree | None
    nodes: list[NodeCheck] = field(default_factory=list)
    table: SemigroupTable | None = None
    word: list[int] = field(default_factory=list)

    def meta(self) -> dict:
        return {"k": self.k, "h": self.height, "semigroup_size": self.semigroup_size, "bound": self.bound,
                "global_bound": self.global_bound}

    @property
    def bound(self) -> int:
        """Width guaranteed by the factorization height, ``3kh - 1``."""
        return 3 * self.k * self.height - 1

    @property
    def global_bound(self) -> int:
        """``9k|A_k| - 1`` with a crude count of all abstractions; reported, never asserted."""
        return 9 * self.k * abstraction_bound(self.k) - 1

    @property
    def simon_bound(self) -> int:
        """Width guaranteed by the size of the generated semigroup, ``9k|S'| - 1``."""
        return 9 * self.k * self.semigroup_size - 1


class _Recursion:
    """Decomposes ``G[W_s ∪ ... ∪ W_{e-1}] - X`` for nodes covering letters ``[s, e)``."""

    def __init__(self, g: Graph, bags: list[frozenset[int]], phi: Mapping[int, int], k: int,
                 table: SemigroupTable, check_abstractions: bool, spread: str):
        self.g = g
        self.spread = spread
        self.bags = bags
        self.phi = phi
        self.k = k
        self.table = table
        self.check_abstractions = check_abstractions
        self.nodes: list[NodeCheck] = []

    def vertices(self, s: int, e: int) -> frozenset[int]:
        return frozenset().union(*self.bags[s:e])

    def left(self, s: int) -> frozenset[int]:
        return self.bags[s] if s > 0 else frozenset()

    def right(self, e: int) -> frozenset[int]:
        return self.bags[e - 1] if e < len(self.bags) else frozenset()

    def concrete(self, s: int, e: int) -> InterfaceGraph:
        vs = self.vertices(s, e)
        return InterfaceGraph(induced_subgraph(self.g, vs), {v: self.phi[v] for v in vs},
                              self.left(s), self.right(e), self.k)

    def run(self, node: FactorTree, x: frozenset[int]) -> ForestDecomposition:
        s, e = node.start, node.stop
        if not x <= self.left(s):
            raise ValueError(f"removed set {sorted(x)} is not inside the left interface")
        if self.check_abstractions:
            got = abstraction(self.concrete(s, e))
            if got != self.table.elements[node.value]:
                raise InvariantError(f"abstraction of letters [{s}, {e}) disagrees with the factor tree value")
        if isinstance(node, Leaf):
            d = base_decompose(self.concrete(s, e), x)
            kind = "leaf"
        elif isinstance(node, Binary):
            d = self.binary(node, x)
            kind = "binary"
        else:
            d = self.unranked(node, x)
            kind = "unranked"
        bound = 3 * self.k * node.height - 1
        self.nodes.append(NodeCheck(s, e, kind, node.height, d.width, bound))
        if d.width > bound:
            raise InvariantError(f"width {d.width} at {kind} node [{s}, {e}) exceeds 3kh-1 = {bound}")
        return d

    def binary(self, node: Binary, x: frozenset[int]) -> ForestDecomposition:
        first, second = node.left, node.right
        x2 = self.right(first.stop) & self.left(second.start)
        d1 = self.run(first, x)
        d2 = self.run(second, x2)
        g = induced_subgraph(self.g, self.vertices(node.start, node.stop) - x)
        b = self.vertices(second.start, second.stop) - x2
        if not neighbor_set(g, b) <= x2:
            raise InvariantError("the second factor is not separated by its shared interface")
        return merge_partition(d1, d2, g, b, self.spread)

    def unranked(self, node: Unranked, x: frozenset[int]) -> ForestDecomposition:
        kids = node.children
        n = len(kids)
        lefts = [self.left(c.start) for c in kids]
        rights = [self.right(c.stop) for c in kids]
        l1 = lefts[0]
        xs = [l1] + [rights[i - 1] & lefts[i] for i in range(1, n)]
        parts = [self.vertices(c.start, c.stop) - xi for c, xi in zip(kids, xs)]
        whole = self.vertices(node.start, node.stop)
        self._check_structure(whole, l1, lefts, rights, xs, parts)

        subs = [self.run(c, xi) for c, xi in zip(kids, xs)]
        g = self.g
        adj = g.adj
        joined_forests = []
        links = []
        for i in range(n - 1):
            pair = subs[i].forest.union(subs[i + 1].forest)
            nxt = parts[i + 1]
            cross = [(u, v) for u in parts[i] for v in adj[u] if v in nxt]
            m = extend_to_maximal_forest(pair, cross)
            joined_forests.append(pair.add_edges(m))
            links.append(m)

        forest_edges = frozenset().union(*(d.forest.edges for d in subs), *links)
        forest = Graph(whole - l1, forest_edges)
        if forest.vertices != whole - l1 or not forest.is_acyclic():
            raise InvariantError(f"joined forest at unranked node [{node.start}, {node.stop}) has a cycle")

        bags = {v: set(bag) for d in subs for v, bag in d.bags.items()}
        for i in range(n - 1):
            nxt = parts[i + 1]
            sources = {u: adj[u] & nxt for u in rights[i] & parts[i]}
            _augment(bags, joined_forests[i], sources, self.spread)
        inner = ForestDecomposition(forest, {v: frozenset(bag) for v, bag in bags.items()})
        inner_bound = 3 * self.k * node.height - self.k - 1
        if inner.width > inner_bound:
            raise InvariantError(f"width {inner.width} without the left interface exceeds {inner_bound}")
        return add_back(inner, induced_subgraph(g, whole - x), l1 - x, self.spread)

    def _check_structure(self, whole, l1, lefts, rights, xs, parts) -> None:
        n = len(parts)
        for i in range(n):
            for v in lefts[i] & rights[i]:
                if not all(v in lefts[j] and v in rights[j] for j in range(n)):
                    raise InvariantError(f"vertex {v} is in both interfaces of one factor but not all")
        owner = {}
        for i, part in enumerate(parts):
            for v in part:
                if v in owner:
                    raise InvariantError(f"vertex {v} lies in factors {owner[v]} and {i}")
                owner[v] = i
        if set(owner) != whole - l1:
            raise InvariantError("factor parts do not cover the vertices outside the left interface")
        for i in range(1, n):
            if not all(owner.get(v) == i - 1 for v in xs[i] - l1):
                raise InvariantError(f"shared interface of factor {i} is not owned by factor {i - 1}")
        for u, v in induced_subgraph(self.g, whole - l1).edges:
            if abs(owner[u] - owner[v]) > 1:
                raise InvariantError(f"edge {u}-{v} joins non-adjacent factors")


def _check_input(g: Graph, p: PathDecomposition) -> None:
    if not g.is_connected():
        raise ValueError("the graph is disconnected; a spanning tree decomposition needs a connected graph")
    report = validate_pathdec(g, p)
    if not report.ok:
        raise ValueError(f"invalid path decomposition:\n{report}")


def decompose_with_certificate(g: Graph, p: PathDecomposition, *, spread: str = "paths",
                               check_abstractions: bool = True) -> Certificate:
    """Run the full construction and keep the quantities that certify its width."""
    _check_spread(spread)
    _check_input(g, p)
    if not g.vertices:
        return Certificate(EMPTY, 1, 1, 0, None)
    nice = make_nice(p, g)
    k = nice.max_bag
    phi = interval_coloring(g, nice, k)
    letters = [abstraction(a) for a in to_interface_word(g, nice, phi, k)]
    table = generate_subsemigroup(letters)
    word = [table.lookup(a) for a in letters]
    tree = factorize(word, table)
    rec = _Recursion(g, list(nice.bags), phi, k, table, check_abstractions, spread)
    d = rec.run(tree, frozenset())
    return Certificate(d, k, tree.height, len(table), tree, rec.nodes, table, word)


def decompose(g: Graph, p: PathDecomposition, *, spread: str = "paths") -> ForestDecomposition:
    """A suitable tree decomposition of the connected graph ``g`` of width at most ``3kh - 1``."""
    return decompose_with_certificate(g, p, spread=spread).decomposition


def naive_sequential(g: Graph, p: PathDecomposition, *, spread: str = "paths") -> ForestDecomposition:
    """Left-to-right baseline: merge in each bag's new vertices one bag at a time."""
    _check_spread(spread)
    _check_input(g, p)
    bags = [b for b in p.bags if b]
    if not bags:
        return EMPTY
    seen = frozenset(bags[0])
    d = component_decomposition(induced_subgraph(g, seen))
    for bag in bags[1:]:
        new = bag - seen
        if not new:
            continue
        d = merge_partition(d, component_decomposition(induced_subgraph(g, new)),
                            induced_subgraph(g, seen | new), new, spread)
        seen |= new
    return d
