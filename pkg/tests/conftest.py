import random
from itertools import combinations

import pytest

from spandecomp.graph import Graph


def path_graph(n):
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(range(n), combinations(range(n), 2))


def random_graph(rng: random.Random, n: int, density: float) -> Graph:
    return Graph(range(n), [e for e in combinations(range(n), 2) if rng.random() < density])


@pytest.fixture
def rng():
    return random.Random(1234)
