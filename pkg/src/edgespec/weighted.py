"""Coefficients of the weighted trace polynomial tr(X_T(y)^r) for a tree T,
and reconstruction of T from its pair coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .graph_core import Graph, GraphError, is_isomorphic, line_graph
from .moments import DEFAULT_MULTISET_BUDGET, multiset_character_sum
from .sym_group import RepresentationAbsentError, closed_character_values

Edge = tuple[int, int]


class ReconstructionError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialSpec:
    exponents: tuple[tuple[Edge, int], ...]

    @classmethod
    def of(cls, exponents: Mapping[Edge, int]) -> "MonomialSpec":
        items = tuple(sorted((tuple(sorted(e)), k) for e, k in exponents.items() if k))
        spec = cls(items)
        if spec.degree < 1:
            raise ValueError("monomial degree must be >= 1")
        return spec

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.exponents)


@dataclass(frozen=True)
class LabeledLineGraph:
    labels: tuple[Edge, ...]
    adjacent: frozenset[frozenset[Edge]]

    def has_edge(self, e: Edge, f: Edge) -> bool:
        return frozenset((e, f)) in self.adjacent

    def as_graph(self) -> Graph:
        index = {e: i for i, e in enumerate(self.labels)}
        return Graph.from_edges(len(self.labels), (tuple(index[x] for x in pair) for pair in self.adjacent))


@dataclass(frozen=True)
class PairCoefficient:
    e: Edge
    f: Edge
    coeff: int
    adjacent: bool

    def to_dict(self) -> dict:
        return {
            "e": list(self.e), "f": list(self.f), "coeff": str(self.coeff),
            "class": "adjacent" if self.adjacent else "disjoint",
        }


def _require_tree(t: Graph) -> None:
    if not t.is_tree():
        raise GraphError("weighted trace coefficients are defined here for trees only")


def monomial_coefficient(t: Graph, spec: MonomialSpec, budget: int = DEFAULT_MULTISET_BUDGET) -> int:
    """Coefficient of prod y_e^{k_e} in tr_{(n-2,2)}(X_T(y)^r)."""
    _require_tree(t)
    if t.n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={t.n}")
    edges = set(t.edge_list)
    for e, _ in spec.exponents:
        if e not in edges:
            raise ValueError(f"{e} is not an edge of the tree")
    letters = [e for e, _ in spec.exponents]
    mults = [k for _, k in spec.exponents]
    return multiset_character_sum(letters, mults, t.n, budget)


def pair_coefficients(t: Graph) -> tuple[list[PairCoefficient], str]:
    """Classify every pair of distinct edges as adjacent or disjoint.

    Uses [y_e y_f] of the quadratic trace, except at n = 7 where
    alpha_7 = beta_7 and the quartic [y_e^2 y_f^2] is used instead.
    Returns the table and the route name ("quadratic" or "quartic").
    """
    _require_tree(t)
    n = t.n
    cv = closed_character_values(n)
    if n == 7:
        route, power = "quartic", 2
        adj_value, dis_value = 4 * cv.d + 2 * cv.alpha, 6 * cv.d
    else:
        route, power = "quadratic", 1
        adj_value, dis_value = 2 * cv.alpha, 2 * cv.beta
    table = []
    for e, f in combinations(t.edge_list, 2):
        coeff = monomial_coefficient(t, MonomialSpec.of({e: power, f: power}))
        if coeff == adj_value:
            adjacent = True
        elif coeff == dis_value:
            adjacent = False
        else:
            raise ArithmeticError(
                f"coefficient {coeff} for {e},{f} matches neither {adj_value} nor {dis_value}"
            )
        table.append(PairCoefficient(e, f, coeff, adjacent))
    return table, route


def pair_adjacency_from_coefficients(t: Graph) -> LabeledLineGraph:
    table, _ = pair_coefficients(t)
    return LabeledLineGraph(
        labels=tuple(t.edge_list),
        adjacent=frozenset(frozenset((pc.e, pc.f)) for pc in table if pc.adjacent),
    )


def _maximal_cliques(nbrs: dict[int, set[int]]) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting."""
    out: list[frozenset[int]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(nbrs[u] & p))
        for v in list(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p.discard(v)
            x.add(v)

    expand(set(), set(nbrs), set())
    return out


def tree_from_labeled_line_graph(lg: LabeledLineGraph, n: int) -> tuple[Graph, dict[Edge, Edge]]:
    """Rebuild a tree on n vertices whose line graph is ``lg``.

    In the line graph of a tree the maximal cliques are the edge stars of
    the internal vertices, so each clique becomes one vertex; a label that
    lies in fewer than two cliques gets a fresh leaf for each missing end.
    A triangle is therefore read as the claw K_{1,3}.
    Returns the tree and the bijection label -> tree edge.
    """
    labels = list(lg.labels)
    k = len(labels)
    if k != n - 1:
        raise ReconstructionError(f"{k} labels cannot be the edges of a tree on {n} vertices")
    if n == 1:
        return Graph.empty(1), {}
    nbrs = {i: set() for i in range(k)}
    for i, j in combinations(range(k), 2):
        if lg.has_edge(labels[i], labels[j]):
            nbrs[i].add(j)
            nbrs[j].add(i)
    cliques = [c for c in _maximal_cliques(nbrs) if len(c) >= 2]
    ends: dict[int, list[int]] = {i: [] for i in range(k)}
    for vertex, clique in enumerate(cliques):
        for i in clique:
            ends[i].append(vertex)
    next_vertex = len(cliques)
    tree_edges = []
    for i in range(k):
        if len(ends[i]) > 2:
            raise ReconstructionError(f"label {labels[i]} lies in {len(ends[i])} maximal cliques")
        while len(ends[i]) < 2:
            ends[i].append(next_vertex)
            next_vertex += 1
        tree_edges.append(tuple(sorted(ends[i])))
    if next_vertex != n:
        raise ReconstructionError(f"assembled {next_vertex} vertices, expected {n}")
    try:
        tree = Graph.from_edges(n, tree_edges)
    except GraphError as exc:
        raise ReconstructionError(str(exc)) from None
    if not tree.is_tree() or len(set(tree_edges)) != k:
        raise ReconstructionError("labelled adjacency is not the line graph of a tree")
    mapping = {labels[i]: tree_edges[i] for i in range(k)}
    # the labelled line graph must be reproduced exactly
    for i, j in combinations(range(k), 2):
        touching = bool(set(tree_edges[i]) & set(tree_edges[j]))
        if touching != (j in nbrs[i]):
            raise ReconstructionError("labelled adjacency is not the line graph of a tree")
    return tree, mapping


def tree_by_search(lg: LabeledLineGraph, n: int, trees) -> Graph | None:
    """Brute-force fallback: the first tree in ``trees`` whose line graph is
    isomorphic to ``lg``."""
    target = lg.as_graph()
    for t in trees:
        if t.n == n and is_isomorphic(line_graph(t), target):
            return t
    return None


@dataclass(frozen=True)
class WeightedResult:
    tree: Graph
    route: str
    table: tuple[PairCoefficient, ...]
    line_graph: LabeledLineGraph
    mapping: dict


def weighted_reconstruction(t: Graph) -> WeightedResult:
    table, route = pair_coefficients(t)
    lg = LabeledLineGraph(
        labels=tuple(t.edge_list),
        adjacent=frozenset(frozenset((pc.e, pc.f)) for pc in table if pc.adjacent),
    )
    tree, mapping = tree_from_labeled_line_graph(lg, t.n)
    return WeightedResult(tree, route, tuple(table), lg, mapping)
