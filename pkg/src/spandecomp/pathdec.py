"""Path decompositions: validation, nice form, an exact pathwidth oracle,
bag colouring, and the conversion to a word of basic interface graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, induced_subgraph
from .interface import InterfaceGraph
from .report import ValidationReport

MAX_ORACLE_VERTICES = 12


class InstanceTooLarge(ValueError):
    """Raised when an exhaustive oracle is asked to handle too large an input."""


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __init__(self, bags: Iterable[Iterable[int]]):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    def __len__(self) -> int:
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)

    def __getitem__(self, i):
        return self.bags[i]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def max_bag(self) -> int:
        return max((len(b) for b in self.bags), default=0)

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.bags)

    def is_nice(self) -> bool:
        return all(len(a ^ b) == 1 for a, b in zip(self.bags, self.bags[1:]))

    def intervals(self) -> dict[int, list[int]]:
        where: dict[int, list[int]] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                where.setdefault(v, []).append(i)
        return where


def _interval_violations(p: PathDecomposition, report: ValidationReport) -> None:
    for v, idx in sorted(p.intervals().items()):
        if idx[-1] - idx[0] + 1 != len(idx):
            report.add("interval", f"vertex {v} occurs in bags {idx}, which is not contiguous")


def validate_pathdec(g: Graph, p: PathDecomposition) -> ValidationReport:
    report = ValidationReport()
    covered = p.vertices()
    for v in sorted(covered - g.vertices):
        report.add("foreign", f"vertex {v} is not in the graph")
    for v in sorted(g.vertices - covered):
        report.add("interval", f"vertex {v} occurs in no bag")
    _interval_violations(p, report)
    where = p.intervals()
    for u, v in sorted(g.edges):
        iu, iv = where.get(u), where.get(v)
        if not iu or not iv or not set(iu) & set(iv):
            report.add("edge", f"edge {u}-{v} is not contained in any bag")
    return report


def make_nice(p: PathDecomposition, g: Graph | None = None) -> PathDecomposition:
    """Nice decomposition of the same width.

    Between two consecutive bags the vertices to forget are removed one at a
    time (ascending id), then the new ones are added (ascending id).  Repeated
    bags and leading/trailing empty bags are dropped.
    """
    report = validate_pathdec(g, p) if g is not None else ValidationReport()
    if g is None:
        _interval_violations(p, report)
    if not report.ok:
        raise ValueError(f"invalid path decomposition:\n{report}")
    bags = [b for b in p.bags]
    while bags and not bags[0]:
        bags.pop(0)
    while bags and not bags[-1]:
        bags.pop()
    if not bags:
        if g is not None and g.vertices:
            raise ValueError("decomposition has no nonempty bag")
        return PathDecomposition([])
    out = [bags[0]]
    for nxt in bags[1:]:
        cur = out[-1]
        for v in sorted(cur - nxt):
            cur = cur - {v}
            out.append(cur)
        for v in sorted(nxt - cur):
            cur = cur | {v}
            out.append(cur)
    collapsed = [out[0]]
    for b in out[1:]:
        if b != collapsed[-1]:
            collapsed.append(b)
    return PathDecomposition(collapsed)


def _bitmask_adjacency(g: Graph) -> tuple[list[int], list[int]]:
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    nbr = [0] * len(order)
    for u, v in g.edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    return nbr, order


def _vertex_separation(g: Graph) -> tuple[int, list[int]]:
    n = len(g.vertices)
    if n > MAX_ORACLE_VERTICES:
        raise InstanceTooLarge(f"exact pathwidth is limited to {MAX_ORACLE_VERTICES} vertices, got {n}")
    nbr, order = _bitmask_adjacency(g)
    full = (1 << n) - 1

    def boundary(s: int) -> int:
        count = 0
        rest = s
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            if nbr[i] & ~s & full:
                count += 1
            rest ^= low
        return count

    # best[s]: min over orderings of s of the largest boundary of a prefix
    best = [0] * (1 << n)
    choice = [-1] * (1 << n)
    for s in range(1, 1 << n):
        b = boundary(s)
        top = None
        rest = s
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            cand = best[s ^ low]
            if top is None or cand < top:
                top, choice[s] = cand, i
            rest ^= low
        best[s] = max(b, top)
    seq = []
    s = full
    while s:
        i = choice[s]
        seq.append(order[i])
        s ^= 1 << i
    seq.reverse()
    return best[full], seq


def exact_pathwidth(g: Graph) -> int:
    """Pathwidth by exhaustive vertex-separation search (at most 12 vertices)."""
    return _vertex_separation(g)[0]


def optimal_path_decomposition(g: Graph) -> PathDecomposition:
    """A minimum-width path decomposition built from an optimal vertex order."""
    width, seq = _vertex_separation(g)
    if not seq:
        return PathDecomposition([])
    adj = g.adj
    placed: set[int] = set()
    bags = []
    for v in seq:
        active = {u for u in placed if adj[u] - placed}
        bags.append(active | {v})
        placed.add(v)
    p = PathDecomposition(bags)
    assert p.width <= width
    return p


def interval_coloring(g: Graph, p: PathDecomposition, k: int) -> dict[int, int]:
    """Labels in ``1..k`` that are injective on every bag.

    A vertex entering a bag gets the smallest label not used by the other
    vertices of that bag.
    """
    if p.max_bag > k:
        raise ValueError(f"a bag has {p.max_bag} vertices, more than k={k}")
    phi: dict[int, int] = {}
    for bag in p.bags:
        for v in sorted(bag):
            if v in phi:
                continue
            used = {phi[u] for u in bag if u in phi}
            phi[v] = next(c for c in range(1, k + 1) if c not in used)
    for v in g.vertices:
        if v not in phi:
            raise ValueError(f"vertex {v} occurs in no bag")
    return phi


def to_interface_word(g: Graph, p: PathDecomposition, phi: dict[int, int], k: int | None = None) -> list[InterfaceGraph]:
    if not p.is_nice():
        raise ValueError("path decomposition must be nice")
    if k is None:
        k = max(phi.values(), default=1)
    m = len(p.bags)
    word = []
    for i, bag in enumerate(p.bags):
        left = bag if i > 0 else frozenset()
        right = bag if i < m - 1 else frozenset()
        word.append(InterfaceGraph(induced_subgraph(g, bag), {v: phi[v] for v in bag}, left, right, k))
    return word


def interval_supergraph(p: PathDecomposition) -> Graph:
    """The graph joining every pair of vertices that share a bag."""
    es = set()
    for bag in p.bags:
        ordered = sorted(bag)
        for i, u in enumerate(ordered):
            for v in ordered[i + 1:]:
                es.add((u, v))
    return Graph(p.vertices(), es)
