"""Finite semigroups generated by abstractions, and factorization trees.

:func:`factorize` builds a tree of binary and unranked (idempotent) nodes whose
height is at most ``3 * |S|``.  The construction follows the Green-relation
structure of the semigroup:

* a word whose value lies in the J-class ``J`` is cut greedily into minimal
  blocks whose value is in ``J``; what precedes the last letter of a block,
  and the leftover tail, evaluate strictly J-above ``J`` and are handled
  recursively;
* the blocks form a word all of whose infixes stay inside ``J``.  For such a
  word, two cut positions with the same prefix value and the same R-class on
  their right bound a factor equal to a fixed idempotent, so cutting at all
  occurrences of one such *pivot* yields an unranked node.  Every piece has
  strictly fewer distinct pivots.

Each result is checked against the bound; if it is ever exceeded the exact
minimum-height tree is computed by dynamic programming instead.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .interface import CanonicalAbstraction, product
from .report import ValidationReport

log = logging.getLogger(__name__)


class SemigroupTable:
    """The subsemigroup generated by a set of abstractions.

    Elements are numbered in the order the closure search discovers them.
    Products are computed on demand and memoised, so ``mul`` is a total
    operation on element indices without paying for the full table up front;
    :meth:`table` materialises it.
    """

    def __init__(self, letters: Sequence[CanonicalAbstraction]):
        if not letters:
            raise ValueError("need at least one generator")
        ks = {a.k for a in letters}
        if len(ks) != 1:
            raise ValueError(f"mismatched k values: {sorted(ks)}")
        self.elements: list[CanonicalAbstraction] = []
        self.index: dict[CanonicalAbstraction, int] = {}
        self._cache: dict[tuple[int, int], int] = {}
        for a in letters:
            self._intern(a)
        self.generators: list[int] = list(range(len(self.elements)))
        # right Cayley graph; every element is a product of generators
        self.right_edges: list[list[int]] = []
        i = 0
        while i < len(self.elements):
            row = []
            for g in self.generators:
                j = self._intern(product(self.elements[i], self.elements[g]))
                self._cache[(i, g)] = j
                row.append(j)
            self.right_edges.append(row)
            i += 1

    def _intern(self, a: CanonicalAbstraction) -> int:
        idx = self.index.get(a)
        if idx is None:
            idx = len(self.elements)
            self.elements.append(a)
            self.index[a] = idx
        return idx

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._cache.get(key)
        if r is None:
            r = self.index[product(self.elements[i], self.elements[j])]
            self._cache[key] = r
        return r

    def lookup(self, a: CanonicalAbstraction) -> int:
        return self.index[a]

    def is_idempotent(self, i: int) -> bool:
        return self.mul(i, i) == i

    @cached_property
    def idempotent_flags(self) -> list[bool]:
        return [self.is_idempotent(i) for i in range(len(self))]

    def table(self) -> list[list[int]]:
        n = len(self)
        return [[self.mul(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def left_edges(self) -> list[list[int]]:
        return [[self.mul(g, i) for g in self.generators] for i in range(len(self))]

    @cached_property
    def r_class(self) -> list[int]:
        return _scc_ids(self.right_edges)

    @cached_property
    def l_class(self) -> list[int]:
        return _scc_ids(self.left_edges)

    @cached_property
    def j_class(self) -> list[int]:
        # J = D = R v L in a finite semigroup
        parent = list(range(len(self)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for classes in (self.r_class, self.l_class):
            first: dict[int, int] = {}
            for i, c in enumerate(classes):
                if c in first:
                    a, b = find(i), find(first[c])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    first[c] = i
        return [find(i) for i in range(len(self))]


def _scc_ids(edges: list[list[int]]) -> list[int]:
    """Strongly connected component id per node (iterative Tarjan)."""
    n = len(edges)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = edges[v]
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def generate_subsemigroup(letters: Sequence[CanonicalAbstraction]) -> SemigroupTable:
    return SemigroupTable(letters)


def evaluate(word: Sequence[int], t: SemigroupTable) -> int:
    if not word:
        raise ValueError("cannot evaluate the empty word")
    acc = word[0]
    for x in word[1:]:
        acc = t.mul(acc, x)
    return acc


@dataclass(frozen=True)
class Leaf:
    start: int
    value: int

    @property
    def stop(self) -> int:
        return self.start + 1

    @property
    def children(self) -> tuple:
        return ()

    @property
    def height(self) -> int:
        return 1


@dataclass(frozen=True)
class Binary:
    left: "FactorTree"
    right: "FactorTree"
    value: int
    height: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "height", 1 + max(self.left.height, self.right.height))

    @property
    def start(self) -> int:
        return self.left.start

    @property
    def stop(self) -> int:
        return self.right.stop

    @property
    def children(self) -> tuple:
        return (self.left, self.right)


@dataclass(frozen=True)
class Unranked:
    children: tuple
    idem: int
    height: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "height", 1 + max(c.height for c in self.children))

    @property
    def value(self) -> int:
        return self.idem

    @property
    def start(self) -> int:
        return self.children[0].start

    @property
    def stop(self) -> int:
        return self.children[-1].stop


FactorTree = Leaf | Binary | Unranked


def tree_height(tr: FactorTree) -> int:
    return tr.height


def iter_nodes(tr: FactorTree):
    """Pre-order traversal."""
    stack = [tr]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


class _Builder:
    def __init__(self, t: SemigroupTable):
        self.t = t
        self.mul = t.mul
        self.jcl = t.j_class
        self.rcl = t.r_class

    def binary(self, a: FactorTree, b: FactorTree) -> Binary:
        return Binary(a, b, self.mul(a.value, b.value))

    def build(self, items: list) -> FactorTree:
        if len(items) == 1:
            return items[0]
        mul, jcl = self.mul, self.jcl
        total = items[0].value
        for it in items[1:]:
            total = mul(total, it.value)
        target = jcl[total]
        blocks = []
        start = 0
        cur = None
        for idx, it in enumerate(items):
            cur = it.value if cur is None else mul(cur, it.value)
            if jcl[cur] == target:
                if idx == start:
                    blocks.append(it)
                else:
                    blocks.append(self.binary(self.build(items[start:idx]), it))
                start = idx + 1
                cur = None
        body = self.smooth(blocks)
        if start < len(items):
            return self.binary(body, self.build(items[start:]))
        return body

    def smooth(self, items: list) -> FactorTree:
        """Items whose every infix evaluates inside one J-class."""
        r = len(items)
        if r == 1:
            return items[0]
        mul, rcl = self.mul, self.rcl
        pivots = []
        prefix = items[0].value
        for t in range(1, r):
            pivots.append((prefix, rcl[items[t].value]))
            prefix = mul(prefix, items[t].value)
        counts = Counter(pivots)
        kappa = max(counts, key=lambda p: (counts[p], -pivots.index(p)))
        cuts = [t for t in range(1, r) if pivots[t - 1] == kappa]
        head = self.smooth(items[:cuts[0]])
        tail = self.smooth(items[cuts[-1]:])
        runs = [self.smooth(items[a:b]) for a, b in zip(cuts, cuts[1:])]
        middle = None
        if runs:
            e = runs[0].value
            if head.value == e:
                runs.insert(0, head)
                head = None
            if tail.value == e:
                runs.append(tail)
                tail = None
            if len(runs) >= 2:
                if any(x.value != e for x in runs) or mul(e, e) != e:
                    raise AssertionError("pivot run does not evaluate to a single idempotent")
                middle = Unranked(tuple(runs), e)
            else:
                middle = runs[0]
        parts = [p for p in (head, middle, tail) if p is not None]
        return self.combine(parts)

    def combine(self, parts: list) -> FactorTree:
        if len(parts) == 1:
            return parts[0]
        if len(parts) == 2:
            return self.binary(parts[0], parts[1])
        a, b, c = parts
        left = self.binary(self.binary(a, b), c)
        right = self.binary(a, self.binary(b, c))
        return left if left.height <= right.height else right


def factorize(word: Sequence[int], t: SemigroupTable) -> FactorTree:
    """A factorization tree for ``word`` of height at most ``3 * len(t)``."""
    if not word:
        raise ValueError("cannot factorize the empty word")
    leaves = [Leaf(i, w) for i, w in enumerate(word)]
    tree = _Builder(t).build(leaves)
    if tree.height > 3 * len(t):
        log.warning("structural factorization exceeded 3|S| (height %d, |S|=%d); using exact search",
                    tree.height, len(t))
        tree = optimal_factorization(word, t)
    return tree


def optimal_factorization(word: Sequence[int], t: SemigroupTable) -> FactorTree:
    """Minimum-height factorization tree by interval dynamic programming.

    Cubic in the word length times the number of idempotents; intended for
    short words.
    """
    n = len(word)
    if n == 0:
        raise ValueError("cannot factorize the empty word")
    INF = 1 << 30
    val = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        acc = word[i]
        val[i][i + 1] = acc
        for j in range(i + 1, n):
            acc = t.mul(acc, word[j])
            val[i][j + 1] = acc
    idems = sorted({val[i][j] for i in range(n) for j in range(i + 1, n + 1) if t.is_idempotent(val[i][j])})
    H = [[INF] * (n + 1) for _ in range(n + 1)]
    how: dict[tuple[int, int], tuple] = {}
    # runs[e][i][j]: min over splits of [i, j) into blocks of value e of the max block height
    runs = {e: [[INF] * (n + 1) for _ in range(n + 1)] for e in idems}
    run_cut: dict[tuple[int, int, int], int] = {}
    for length in range(1, n + 1):
        for i in range(n - length + 1):
            j = i + length
            if length == 1:
                H[i][j] = 1
                how[i, j] = ("leaf",)
            else:
                best, arg = INF, None
                for m in range(i + 1, j):
                    h = 1 + max(H[i][m], H[m][j])
                    if h < best:
                        best, arg = h, ("binary", m)
                for e in idems:
                    re = runs[e][i]
                    for m in range(i + 1, j):
                        if val[m][j] == e and re[m] < INF:
                            h = 1 + max(re[m], H[m][j])
                            if h < best:
                                best, arg = h, ("unranked", e, m)
                H[i][j] = best
                how[i, j] = arg
            for e in idems:
                best, cut = (H[i][j], None) if val[i][j] == e else (INF, None)
                re = runs[e][i]
                for m in range(i + 1, j):
                    if val[m][j] == e and re[m] < INF:
                        h = max(re[m], H[m][j])
                        if h < best:
                            best, cut = h, m
                runs[e][i][j] = best
                run_cut[e, i, j] = cut

    def blocks(e, i, j):
        cut = run_cut[e, i, j]
        if cut is None:
            return [build(i, j)]
        return blocks(e, i, cut) + [build(cut, j)]

    def build(i, j):
        kind = how[i, j]
        if kind[0] == "leaf":
            return Leaf(i, word[i])
        if kind[0] == "binary":
            m = kind[1]
            return Binary(build(i, m), build(m, j), val[i][j])
        e, m = kind[1], kind[2]
        return Unranked(tuple(blocks(e, i, m) + [build(m, j)]), e)

    return build(0, n)


def minimum_height(word: Sequence[int], t: SemigroupTable) -> int:
    """The least height of any factorization tree of ``word``."""
    return optimal_factorization(word, t).height


def verify_factor_tree(tr: FactorTree, word: Sequence[int], t: SemigroupTable,
                       bound: int | None = None) -> ValidationReport:
    report = ValidationReport()
    if bound is None:
        bound = 3 * len(t)
    leaves = [node for node in iter_nodes(tr) if isinstance(node, Leaf)]
    positions = [leaf.start for leaf in leaves]
    if positions != list(range(len(word))):
        report.add("coverage", f"leaves cover positions {positions}, expected 0..{len(word) - 1}")
    for leaf in leaves:
        if 0 <= leaf.start < len(word) and leaf.value != word[leaf.start]:
            report.add("letter", f"leaf at {leaf.start} holds {leaf.value}, word has {word[leaf.start]}")
    for node in iter_nodes(tr):
        kids = node.children
        if not kids:
            continue
        if isinstance(node, Binary) and len(kids) != 2:
            report.add("shape", f"binary node at {node.start} has {len(kids)} children")
        if len(kids) < 2:
            report.add("shape", f"node at {node.start} has fewer than two children")
        for a, b in zip(kids, kids[1:]):
            if a.stop != b.start:
                report.add("coverage", f"children of node at {node.start} are not contiguous")
        expected = evaluate([c.value for c in kids], t)
        if node.value != expected:
            report.add("value", f"node spanning [{node.start}, {node.stop}) caches {node.value}, "
                                f"children evaluate to {expected}")
        if isinstance(node, Unranked):
            if not t.is_idempotent(node.idem):
                report.add("idempotent", f"unranked node at {node.start} uses non-idempotent {node.idem}")
            bad = [c.value for c in kids if c.value != node.idem]
            if bad:
                report.add("idempotent", f"unranked node at {node.start} has children valued {bad}, "
                                         f"expected all {node.idem}")
    if word and report.ok:
        whole = evaluate(word, t)
        if tr.value != whole:
            report.add("value", f"root caches {tr.value}, word evaluates to {whole}")
    if tr.height > bound:
        report.add("height", f"height {tr.height} exceeds bound {bound}")
    return report
