"""k-interface graphs, gluing, abstractions and the product on abstractions.

A k-interface graph is ``(G, phi, L, R)`` with ``phi: V(G) -> {1..k}``
injective on ``L`` and on ``R``.  Because of that injectivity, a vertex of a
*basic* interface graph (``L | R == V(G)``) is pinned down by its label and by
which of ``L - R``, ``R - L``, ``L & R`` it lies in.  :class:`CanonicalAbstraction`
uses exactly this pair as vertex identity, so isomorphism classes of basic
interface graphs compare by plain equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .graph import Graph, torso

LEFT, RIGHT, BOTH = 0, 1, 2
SIDE_NAMES = ("L", "R", "B")


@dataclass(frozen=True, eq=False)
class InterfaceGraph:
    g: Graph
    phi: Mapping[int, int]
    left: frozenset[int]
    right: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        object.__setattr__(self, "right", frozenset(self.right))
        object.__setattr__(self, "phi", dict(self.phi))
        verts = self.g.vertices
        if set(self.phi) != verts:
            raise ValueError("labelling must be defined exactly on the vertex set")
        if not (self.left <= verts and self.right <= verts):
            raise ValueError("interface sets must be subsets of the vertex set")
        for v, lab in self.phi.items():
            if not 1 <= lab <= self.k:
                raise ValueError(f"label {lab} of vertex {v} outside 1..{self.k}")
        for name, side in (("left", self.left), ("right", self.right)):
            labels = [self.phi[v] for v in side]
            if len(labels) != len(set(labels)):
                raise ValueError(f"labelling is not injective on the {name} interface")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InterfaceGraph):
            return NotImplemented
        return (self.g == other.g and self.phi == other.phi and self.left == other.left
                and self.right == other.right and self.k == other.k)

    @property
    def vertices(self) -> frozenset[int]:
        return self.g.vertices

    def is_basic(self) -> bool:
        return self.left | self.right == self.g.vertices


def _check_k(seq: Sequence[InterfaceGraph]) -> None:
    ks = {a.k for a in seq}
    if len(ks) > 1:
        raise ValueError(f"mismatched k values: {sorted(ks)}")


def compatible(a: InterfaceGraph, b: InterfaceGraph) -> bool:
    _check_k([a, b])
    shared_labels = {a.phi[v] for v in a.right} & {b.phi[v] for v in b.left}
    shared = a.vertices & b.vertices
    from_a = {v for v in a.right if a.phi[v] in shared_labels}
    from_b = {v for v in b.left if b.phi[v] in shared_labels}
    if not (shared == from_a == from_b):
        return False
    return all(a.phi[v] == b.phi[v] for v in shared)


def compatible_sequence(seq: Sequence[InterfaceGraph]) -> bool:
    _check_k(seq)
    if not all(compatible(a, b) for a, b in zip(seq, seq[1:])):
        return False
    seen: dict[int, int] = {}
    for i, a in enumerate(seq):
        for v in a.vertices:
            last = seen.get(v)
            if last is not None and last != i - 1:
                return False
            seen[v] = i
    return True


def glue(seq: Sequence[InterfaceGraph]) -> InterfaceGraph:
    """The union of a compatible sequence, with the first left and last right interface."""
    if not seq:
        raise ValueError("cannot glue an empty sequence")
    if len(seq) == 1:
        return seq[0]
    if not compatible_sequence(seq):
        raise ValueError("sequence is not compatible")
    vertices = frozenset().union(*(a.vertices for a in seq))
    edges = frozenset().union(*(a.g.edges for a in seq))
    phi: dict[int, int] = {}
    for a in seq:
        phi.update(a.phi)
    return InterfaceGraph(Graph._trusted(vertices, edges), phi, seq[0].left, seq[-1].right, seq[0].k)


def _side(v: int, left: frozenset[int], right: frozenset[int]) -> int:
    if v in left:
        return BOTH if v in right else LEFT
    return RIGHT


@dataclass(frozen=True, order=True)
class CanonicalAbstraction:
    """An element of the abstraction semigroup.

    ``left``, ``right`` and ``both`` are bitmasks of label sets (bit ``a-1``
    for label ``a``).  Canonical vertex ``(a, side)`` has index
    ``side * k + a - 1`` and ``adj[i]`` is the neighbourhood bitmask of index
    ``i``.
    """

    k: int
    left: int
    right: int
    both: int
    adj: tuple[int, ...] = field(repr=False)
    present: int = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = self.k
        both = self.both
        present = (self.left & ~both) | (self.right & ~both) << k | both << 2 * k
        object.__setattr__(self, "present", present)
        object.__setattr__(self, "_hash", hash((k, self.left, self.right, both, self.adj)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def left_labels(self) -> frozenset[int]:
        return _labels(self.left)

    @property
    def right_labels(self) -> frozenset[int]:
        return _labels(self.right)

    @property
    def both_labels(self) -> frozenset[int]:
        return _labels(self.both)

    def vertex_ids(self) -> list[int]:
        return [i for i in range(3 * self.k) if self.present >> i & 1]

    def vertices(self) -> list[tuple[int, str]]:
        return [_name(i, self.k) for i in self.vertex_ids()]

    def edges(self) -> list[tuple[tuple[int, str], tuple[int, str]]]:
        out = []
        for i in self.vertex_ids():
            m = self.adj[i] >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((_name(i, self.k), _name(j, self.k)))
                m >>= 1
                j += 1
        return out

    def dump(self) -> str:
        """Deterministic one-line text form."""
        def fmt(mask):
            return "{" + ",".join(str(a) for a in sorted(_labels(mask))) + "}"
        es = " ".join(f"{a}{s}-{b}{t}" for (a, s), (b, t) in self.edges())
        return f"k={self.k} L={fmt(self.left)} R={fmt(self.right)} B={fmt(self.both)} E=[{es}]"

    def representative(self, ids: Mapping[int, int] | None = None) -> InterfaceGraph:
        """A basic interface graph in this class.

        ``ids`` maps canonical indices to vertex ids; by default vertex ids are
        ``-(index + 1)``.
        """
        if ids is None:
            ids = {i: -(i + 1) for i in self.vertex_ids()}
        k = self.k
        present = self.vertex_ids()
        phi, left, right, es = {}, set(), set(), []
        for i in present:
            v = ids[i]
            side, lab = divmod(i, k)
            phi[v] = lab + 1
            if side in (LEFT, BOTH):
                left.add(v)
            if side in (RIGHT, BOTH):
                right.add(v)
        for i in present:
            for j in present:
                if j > i and self.adj[i] >> j & 1:
                    es.append((ids[i], ids[j]))
        return InterfaceGraph(Graph([ids[i] for i in present], es), phi, left, right, k)


def _labels(mask: int) -> frozenset[int]:
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return frozenset(out)


def _name(i: int, k: int) -> tuple[int, str]:
    side, lab = divmod(i, k)
    return (lab + 1, SIDE_NAMES[side])


def abstraction(a: InterfaceGraph) -> CanonicalAbstraction:
    """Torso on ``L | R`` followed by renaming each vertex to its canonical index."""
    k = a.k
    terminals = a.left | a.right
    t = torso(a.g, terminals)
    index = {v: _side(v, a.left, a.right) * k + a.phi[v] - 1 for v in terminals}
    adj = [0] * (3 * k)
    for u, v in t.edges:
        iu, iv = index[u], index[v]
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
    lmask = rmask = bmask = 0
    for v in a.left:
        lmask |= 1 << (a.phi[v] - 1)
    for v in a.right:
        rmask |= 1 << (a.phi[v] - 1)
    for v in a.left & a.right:
        bmask |= 1 << (a.phi[v] - 1)
    return CanonicalAbstraction(k, lmask, rmask, bmask, tuple(adj))


def compatible_representatives(x: CanonicalAbstraction, y: CanonicalAbstraction) -> tuple[InterfaceGraph, InterfaceGraph]:
    """Representatives of ``x`` and ``y`` that share exactly the forced vertices.

    Right vertices of ``x`` and left vertices of ``y`` carrying a common label
    are identified; every other vertex gets its own fresh negative id.
    """
    if x.k != y.k:
        raise ValueError(f"mismatched k values: {x.k} != {y.k}")
    k = x.k
    xids = {i: -(i + 1) for i in x.vertex_ids()}
    yids = {i: -(3 * k + i + 1) for i in y.vertex_ids()}
    shared = x.right & y.left
    for a in _labels(shared):
        bit = 1 << (a - 1)
        xi = (2 * k if x.both & bit else k) + a - 1
        yi = (2 * k if y.both & bit else 0) + a - 1
        yids[yi] = xids[xi]
    return x.representative(xids), y.representative(yids)


def boxplus(x: CanonicalAbstraction, y: CanonicalAbstraction) -> CanonicalAbstraction:
    """Abstraction of the gluing of compatible representatives of ``x`` and ``y``."""
    rx, ry = compatible_representatives(x, y)
    return abstraction(glue([rx, ry]))


@lru_cache(maxsize=None)
def _relabel_table(k: int, shared: int, x_both: int, y_both: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Where each canonical index of ``y`` lands in the combined node space.

    Combined nodes ``0..3k-1`` are ``x``'s indices and ``3k..6k-1`` are ``y``'s;
    a left vertex of ``y`` whose label is shared is identified with the right
    vertex of ``x`` carrying that label.  The second component maps every
    ``y``-bitmask to the combined bitmask.
    """
    n3 = 3 * k
    rep = list(range(n3, 2 * n3))
    for a in range(k):
        bit = 1 << a
        if shared & bit:
            xi = (2 * k if x_both & bit else k) + a
            yi = (2 * k if y_both & bit else 0) + a
            rep[yi] = xi
    masks = [0] * (1 << n3)
    for m in range(1, 1 << n3):
        low = m & -m
        masks[m] = masks[m ^ low] | 1 << rep[low.bit_length() - 1]
    return tuple(rep), tuple(masks)


def product(x: CanonicalAbstraction, y: CanonicalAbstraction) -> CanonicalAbstraction:
    """Same value as :func:`boxplus`, computed directly on the bitmask form."""
    k = x.k
    if y.k != k:
        raise ValueError(f"mismatched k values: {k} != {y.k}")
    n3 = 3 * k
    shared = x.right & y.left
    rep, remap = _relabel_table(k, shared, x.both & shared, y.both & shared)
    adj = list(x.adj) + [0] * n3
    for i, nb in enumerate(y.adj):
        if nb:
            adj[rep[i]] |= remap[nb]
    present = x.present | remap[y.present]
    full = (1 << k) - 1
    in_left = x.present & (full | full << 2 * k)
    in_right = remap[y.present & (full << k | full << 2 * k)]
    terminals = in_left | in_right
    out = {}
    t = terminals
    while t:
        low = t & -t
        i = low.bit_length() - 1
        out[i] = adj[i] & terminals
        t ^= low
    # each component of inner vertices turns its terminal neighbourhood into a clique
    inner = present & ~terminals
    while inner:
        comp = frontier = inner & -inner
        while frontier:
            f = frontier & -frontier
            frontier ^= f
            nb = adj[f.bit_length() - 1] & inner & ~comp
            comp |= nb
            frontier |= nb
        inner &= ~comp
        attach = 0
        while comp:
            f = comp & -comp
            attach |= adj[f.bit_length() - 1]
            comp ^= f
        attach &= terminals
        c = attach
        while c:
            f = c & -c
            out[f.bit_length() - 1] |= attach & ~f
            c ^= f
    # rename terminals to the canonical indices of the result
    canon = {}
    both = 0
    for i in out:
        lab = i % n3 % k
        if in_left >> i & 1:
            if in_right >> i & 1:
                canon[i] = 2 * k + lab
                both |= 1 << lab
            else:
                canon[i] = lab
        else:
            canon[i] = k + lab
    res = [0] * n3
    for i, nb in out.items():
        row = 0
        while nb:
            f = nb & -nb
            row |= 1 << canon[f.bit_length() - 1]
            nb ^= f
        res[canon[i]] = row
    return CanonicalAbstraction(k, x.left, y.right, both, tuple(res))


def abstraction_bound(k: int) -> int:
    """Upper bound on the number of abstractions for a given k."""
    return 2 ** k * 2 ** k * 2 ** k * 2 ** ((2 * k) ** 2)


def word_letters(word: Iterable[InterfaceGraph]) -> list[CanonicalAbstraction]:
    return [abstraction(a) for a in word]
