import random
from itertools import combinations

import pytest

from edgespec.census import GM_GRAPH6, enumerate_free_trees
from edgespec.graph_core import Graph, graph6_decode

ACCEPTANCE_LINES: list[str] = []


def all_labeled_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for k, p in enumerate(pairs) if (mask >> k) & 1))


def random_graph(rng, n, p=0.5):
    return Graph.from_edges(n, (e for e in combinations(range(n), 2) if rng.random() < p))


def random_relabel(rng, g):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def trees_up_to(n_max, n_min=1):
    return [t for n in range(n_min, n_max + 1) for t in enumerate_free_trees(n)]


@pytest.fixture(scope="session")
def gm_pair():
    return tuple(graph6_decode(s) for s in GM_GRAPH6)


@pytest.fixture
def rng():
    return random.Random(20261018)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
