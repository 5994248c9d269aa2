"""Validators, exhaustive oracles and instance generators."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .decomposer import ForestDecomposition
from .graph import Graph, UnionFind, connected_components, induced_subgraph, iter_pairs
from .pathdec import InstanceTooLarge, PathDecomposition
from .report import ValidationReport

__all__ = [
    "ValidationReport", "validate_forest_decomposition", "validate_suitable", "brute_force_cmp",
    "exact_treewidth", "gen_fig1", "fig1_names", "gen_random_pathdec", "connected_graphs",
    "canonical_key", "MAX_CMP_VERTICES",
]

MAX_CMP_VERTICES = 7
MAX_CANONICAL_VERTICES = 6


def _occurrences(d: ForestDecomposition) -> dict[int, set[int]]:
    where: dict[int, set[int]] = {}
    for x, bag in d.bags.items():
        for u in bag:
            where.setdefault(u, set()).add(x)
    return where


def validate_forest_decomposition(g: Graph, d: ForestDecomposition) -> ValidationReport:
    """Forest shape, vertex occurrence sets nonempty and connected, edge coverage."""
    report = ValidationReport()
    f = d.forest
    if set(d.bags) != set(f.vertices):
        missing = sorted(f.vertices - set(d.bags))
        extra = sorted(set(d.bags) - f.vertices)
        report.add("index", f"bags missing for forest nodes {missing}, bags for non-nodes {extra}")
    if not f.is_acyclic():
        report.add("acyclic", "the indexing graph contains a cycle")
    for x, bag in sorted(d.bags.items()):
        foreign = sorted(bag - g.vertices)
        if foreign:
            report.add("foreign", f"bag of {x} holds non-vertices {foreign}")
    where = _occurrences(d)
    nodes = f.vertices
    for u in sorted(g.vertices):
        occ = frozenset(where.get(u, ())) & nodes
        if not occ:
            report.add("bag-connectivity", f"vertex {u} occurs in no bag")
        elif len(connected_components(induced_subgraph(f, occ))) != 1:
            report.add("bag-connectivity", f"bags containing vertex {u} are not connected in the forest")
    for u, v in sorted(g.edges):
        if not where.get(u, set()) & where.get(v, set()):
            report.add("edge-coverage", f"edge {u}-{v} is not contained in any bag")
    return report


def validate_suitable(g: Graph, d: ForestDecomposition) -> ValidationReport:
    """Forest decomposition properties plus: spanning subgraph of ``g``, each vertex in
    its own bag, and for connected ``g`` a connected forest."""
    report = validate_forest_decomposition(g, d)
    f = d.forest
    if f.vertices != g.vertices:
        report.add("spanning", f"forest nodes differ from graph vertices: missing "
                               f"{sorted(g.vertices - f.vertices)}, extra {sorted(f.vertices - g.vertices)}")
    for u, v in sorted(f.edges - g.edges):
        report.add("spanning", f"forest edge {u}-{v} is not an edge of the graph")
    for u in sorted(g.vertices):
        if u in d.bags and u not in d.bags[u]:
            report.add("own-bag", f"vertex {u} is not in its own bag")
    if g.is_connected() and g.vertices and not f.is_connected():
        report.add("tree", "graph is connected but the forest is not")
    return report


# ---------------------------------------------------------------- oracles

def _relabel(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    return len(order), sorted((index[u], index[v]) for u, v in g.edges)


def exact_treewidth(g: Graph) -> int:
    """Treewidth by dynamic programming over elimination prefixes (small graphs)."""
    n, edges = _relabel(g)
    if n > 12:
        raise InstanceTooLarge(f"exact treewidth is limited to 12 vertices, got {n}")
    if n == 0:
        return 0
    nbr = [0] * n
    for u, v in edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    def q_size(s: int, v: int) -> int:
        # vertices outside s + v reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            i = low.bit_length() - 1
            for_each = nbr[i] & ~seen
            seen |= for_each
            inside = for_each & s
            frontier |= inside
            out |= for_each & ~s
        return bin(out).count("1")

    tw = [0] * (1 << n)
    tw[0] = -1
    for s in range(1, 1 << n):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            cand = max(tw[s ^ low], q_size(s ^ low, v))
            if cand < best:
                best = cand
        tw[s] = best
    return max(tw[(1 << n) - 1], 0)


def _spanning_trees(n: int, edges: list[tuple[int, int]]):
    for combo in combinations(edges, n - 1):
        uf = UnionFind(range(n))
        if all(uf.union(u, v) for u, v in combo):
            yield combo


def _tree_paths(n: int, tree: tuple[tuple[int, int], ...]) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for u, v in tree:
        adj[u].append(v)
        adj[v].append(u)
    paths = [[0] * n for _ in range(n)]
    for src in range(n):
        paths[src][src] = 1 << src
        stack = [src]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not paths[src][w]:
                    paths[src][w] = paths[src][u] | (1 << w)
                    stack.append(w)
    return paths


def _feasible(n: int, paths: list[list[int]], edges: list[tuple[int, int]], cap: int) -> bool:
    """Can every vertex u get a subtree S_u containing u, pairwise meeting along
    graph edges, with every tree node in at most ``cap`` subtrees?"""
    occ = [1 << u for u in range(n)]
    load = [1] * n
    order = sorted(edges, key=lambda e: bin(paths[e[0]][e[1]]).count("1"))

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        u, v = order[i]
        if occ[u] & occ[v]:
            return rec(i + 1)
        span = paths[u][v]
        while span:
            low = span & -span
            span ^= low
            x = low.bit_length() - 1
            add_u = paths[u][x] & ~occ[u]
            add_v = paths[v][x] & ~occ[v]
            touched = []
            ok = True
            for add in (add_u, add_v):
                rest = add
                while rest:
                    b = rest & -rest
                    rest ^= b
                    j = b.bit_length() - 1
                    load[j] += 1
                    touched.append(j)
                    if load[j] > cap:
                        ok = False
            if ok:
                occ[u] |= add_u
                occ[v] |= add_v
                if rec(i + 1):
                    return True
                occ[u] &= ~add_u
                occ[v] &= ~add_v
            for j in touched:
                load[j] -= 1
        return False

    return rec(0)


def _cmp_connected(g: Graph) -> int:
    n, edges = _relabel(g)
    if n <= 1:
        return 0
    low = exact_treewidth(g)
    trees = list(_spanning_trees(n, edges))
    all_paths = [_tree_paths(n, t) for t in trees]
    for width in range(low, n - 1):
        if any(_feasible(n, paths, edges, width + 1) for paths in all_paths):
            return width
    return n - 1


_cmp_cache: dict[tuple[int, int], int] = {}


def brute_force_cmp(g: Graph) -> int:
    """Least width of a suitable forest decomposition, by exhaustive search."""
    if len(g.vertices) > MAX_CMP_VERTICES:
        raise InstanceTooLarge(f"exhaustive complexity search is limited to {MAX_CMP_VERTICES} vertices, "
                               f"got {len(g.vertices)}")
    best = 0
    for comp in connected_components(g):
        h = induced_subgraph(g, comp)
        if len(comp) <= MAX_CANONICAL_VERTICES:
            key = canonical_key(h)
            if key not in _cmp_cache:
                _cmp_cache[key] = _cmp_connected(h)
            value = _cmp_cache[key]
        else:
            value = _cmp_connected(h)
        best = max(best, value)
    return best


# ------------------------------------------------- isomorphism classes of small graphs

def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(combinations(range(n), 2))}


@lru_cache(maxsize=None)
def _canonical_table(n: int) -> np.ndarray:
    """``table[mask]``: least mask over all relabellings of the graph coded by ``mask``."""
    if n > MAX_CANONICAL_VERTICES:
        raise InstanceTooLarge(f"canonical forms are tabulated up to {MAX_CANONICAL_VERTICES} vertices")
    index = _pair_index(n)
    pairs = list(index)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    bits = [(masks >> i) & 1 for i in range(len(pairs))]
    best = masks.copy()
    for perm in permutations(range(n)):
        image = np.zeros_like(masks)
        for i, (a, b) in enumerate(pairs):
            pa, pb = perm[a], perm[b]
            j = index[(pa, pb) if pa < pb else (pb, pa)]
            image |= bits[i] << j
        np.minimum(best, image, out=best)
    return best


def _mask(n: int, edges: list[tuple[int, int]]) -> int:
    index = _pair_index(n)
    m = 0
    for e in edges:
        m |= 1 << index[e]
    return m


def canonical_key(g: Graph) -> tuple[int, int]:
    """Isomorphism invariant that is complete for graphs on at most 6 vertices."""
    n, edges = _relabel(g)
    return n, int(_canonical_table(n)[_mask(n, edges)])


def _graph_from_mask(n: int, mask: int) -> Graph:
    es = [p for i, p in enumerate(combinations(range(n), 2)) if mask >> i & 1]
    return Graph(range(n), es)


def connected_graphs(max_n: int) -> list[Graph]:
    """One connected graph per isomorphism class on 1..max_n vertices (max_n <= 6)."""
    out = []
    for n in range(1, max_n + 1):
        for mask in np.unique(_canonical_table(n)).tolist():
            g = _graph_from_mask(n, mask)
            if g.is_connected():
                out.append(g)
    return out


# ------------------------------------------------------------- generators

def fig1_names(n: int) -> dict[int, str]:
    names = {i: f"v{i}" for i in range(n + 1)}
    names.update({n + i: f"u{i}" for i in range(1, n + 1)})
    names.update({2 * n + i: f"w{i}" for i in range(1, n + 1)})
    return names


def gen_fig1(n: int) -> tuple[Graph, PathDecomposition]:
    """Two paths u1..un and w1..wn, v0 joined to u1 and w1, each vi joined to ui and wi,
    with the width-2 decomposition that sweeps both paths in lockstep.

    Vertex ids: ``v_i = i``, ``u_i = n + i``, ``w_i = 2n + i``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")

    def u(i):
        return n + i

    def w(i):
        return 2 * n + i

    edges = [(0, u(1)), (0, w(1))]
    edges += [(u(i), u(i + 1)) for i in range(1, n)]
    edges += [(w(i), w(i + 1)) for i in range(1, n)]
    edges += [(i, u(i)) for i in range(1, n + 1)] + [(i, w(i)) for i in range(1, n + 1)]
    bags = [{u(1), 0, w(1)}]
    for i in range(1, n):
        bags += [{u(i), i, w(i)}, {u(i), u(i + 1), w(i)}, {u(i + 1), w(i), w(i + 1)}]
    bags.append({u(n), n, w(n)})
    return Graph(range(3 * n + 1), edges), PathDecomposition(bags)


def gen_random_pathdec(k: int, m: int, density: float, seed: int) -> tuple[Graph, PathDecomposition]:
    """Random connected graph with a nice path decomposition of at most ``m`` bags of size at most ``k``.

    With ``k = 1`` no move is possible and the result is a single one-vertex bag.
    Otherwise there are exactly ``m`` bags.  Bags evolve by introducing a fresh vertex or forgetting one (never emptying
    a bag); each pair of vertices sharing a bag becomes an edge with
    probability ``density``; lexicographically first co-bag pairs are then
    added until the graph is connected.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    bags = [frozenset({0})]
    fresh = 1
    for _ in range(m - 1):
        cur = bags[-1]
        moves = []
        if len(cur) < k:
            moves.append("introduce")
        if len(cur) > 1:
            moves.append("forget")
        if not moves:
            continue
        if rng.choice(moves) == "introduce":
            bags.append(cur | {fresh})
            fresh += 1
        else:
            bags.append(cur - {rng.choice(sorted(cur))})
    pairs = sorted({e for bag in bags for e in iter_pairs(bag)})
    edges = [e for e in pairs if rng.random() < density]
    uf = UnionFind(range(fresh))
    for u, v in edges:
        uf.union(u, v)
    for u, v in pairs:
        if uf.union(u, v):
            edges.append((u, v))
    return Graph(range(fresh), edges), PathDecomposition(bags)
