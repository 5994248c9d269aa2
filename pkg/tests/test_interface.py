import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spandecomp.graph import Graph
from spandecomp.interface import (InterfaceGraph, abstraction, boxplus, compatible, compatible_sequence, glue,
                                  product)
from spandecomp.pathdec import interval_coloring, make_nice, to_interface_word
from spandecomp.semigroup import generate_subsemigroup
from spandecomp.verification import gen_fig1, gen_random_pathdec


def iface(vertices, edges, phi, left, right, k=2):
    return InterfaceGraph(Graph(vertices, edges), phi, left, right, k)


def random_word(seed, k=None, m=None):
    rng = random.Random(seed)
    k = k or rng.randint(1, 3)
    g, p = gen_random_pathdec(k, m or rng.randint(1, 14), rng.random(), seed)
    nice = make_nice(p, g)
    return to_interface_word(g, nice, interval_coloring(g, nice, k), k)


def test_interface_graph_checks_injectivity():
    with pytest.raises(ValueError):
        iface([1, 2], [], {1: 1, 2: 1}, {1, 2}, set())
    with pytest.raises(ValueError):
        iface([1], [], {1: 3}, {1}, set())


def test_compatible_examples():
    a = iface([1], [], {1: 1}, set(), {1})
    b = iface([2], [], {2: 1}, {2}, set())
    # disjoint vertices, but label 1 is on both interfaces -> must be shared
    assert not compatible(a, b)
    c = iface([2], [], {2: 2}, {2}, set())
    assert compatible(a, c)
    d = iface([1, 3], [(1, 3)], {1: 1, 3: 2}, {1}, set())
    assert compatible(a, d)
    with pytest.raises(ValueError):
        compatible(a, iface([2], [], {2: 1}, {2}, set(), k=3))


def test_compatible_sequence_interval_condition():
    a = iface([1], [], {1: 1}, set(), set())
    b = iface([2], [], {2: 1}, set(), set())
    assert compatible_sequence([a, b])
    assert not compatible_sequence([a, b, a])


def test_glue_examples():
    a = iface([1, 2], [(1, 2)], {1: 1, 2: 2}, {1}, {2})
    assert glue([a]) is a
    b = iface([2, 3], [(2, 3)], {2: 2, 3: 1}, {2}, {3})
    ab = glue([a, b])
    assert ab.g == Graph([1, 2, 3], [(1, 2), (2, 3)])
    assert ab.left == {1} and ab.right == {3}
    with pytest.raises(ValueError):
        glue([])


def test_abstraction_of_basic_graph_is_itself():
    a = iface([1, 2], [(1, 2)], {1: 1, 2: 2}, {1}, {2})
    x = abstraction(a)
    assert x.vertices() == [(1, "L"), (2, "R")]
    assert x.edges() == [((1, "L"), (2, "R"))]
    assert abstraction(x.representative()) == x


def test_abstraction_path_through_internal_vertex():
    a = iface([1, 2, 3], [(1, 2), (2, 3)], {1: 1, 2: 2, 3: 2}, {1}, {3})
    x = abstraction(a)
    assert x.vertices() == [(1, "L"), (2, "R")]
    assert x.edges() == [((1, "L"), (2, "R"))]


def test_abstraction_invariant_under_renaming():
    word = random_word(5, k=3, m=12)
    a = glue(word)
    shift = {v: v + 100 for v in a.vertices}
    b = InterfaceGraph(Graph([shift[v] for v in a.vertices], [(shift[u], shift[v]) for u, v in a.g.edges]),
                       {shift[v]: lab for v, lab in a.phi.items()}, [shift[v] for v in a.left],
                       [shift[v] for v in a.right], a.k)
    assert abstraction(a) == abstraction(b)


def test_boxplus_disjoint_union():
    x = abstraction(iface([1, 2], [(1, 2)], {1: 1, 2: 2}, {1, 2}, set()))
    y = abstraction(iface([3], [], {3: 1}, set(), {3}))
    z = boxplus(x, y)
    assert z.vertices() == [(1, "L"), (2, "L"), (1, "R")]
    assert z.edges() == [((1, "L"), (2, "L"))]


def test_two_element_semigroup():
    a = abstraction(iface([0, 1], [(0, 1)], {0: 1, 1: 2}, {0}, {1}))
    b = boxplus(a, a)
    assert b != a
    assert b.edges() == []
    assert boxplus(b, b) == b and boxplus(a, b) == b and boxplus(b, a) == b
    t = generate_subsemigroup([a])
    assert len(t) == 2


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
@settings(max_examples=150, deadline=None)
def test_product_agrees_with_boxplus_and_is_associative(s1, s2, s3):
    rng = random.Random(s1)
    k = rng.randint(1, 3)
    x, y, z = (abstraction(glue(random_word(s, k=k))) for s in (s1, s2, s3))
    assert product(x, y) == boxplus(x, y)
    assert boxplus(boxplus(x, y), z) == boxplus(x, boxplus(y, z))
    assert product(product(x, y), z) == product(x, product(y, z))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=150, deadline=None)
def test_abstraction_is_a_homomorphism(seed):
    word = random_word(seed)
    if len(word) < 2:
        return
    j = random.Random(seed).randint(1, len(word) - 1)
    a, b = glue(word[:j]), glue(word[j:])
    assert compatible(a, b)
    assert abstraction(glue([a, b])) == boxplus(abstraction(a), abstraction(b))


def test_fig1_word_letters_compose_to_whole():
    g, p = gen_fig1(3)
    nice = make_nice(p, g)
    word = to_interface_word(g, nice, interval_coloring(g, nice, 3), 3)
    assert compatible_sequence(word)
    acc = abstraction(word[0])
    for a in word[1:]:
        acc = product(acc, abstraction(a))
    assert acc == abstraction(glue(word))
    assert glue(word).g == g
