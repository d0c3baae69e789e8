from itertools import combinations, product

import pytest

from edgespec.census import enumerate_free_trees
from edgespec.graph_core import (
    GraphError, cycle_graph, is_isomorphic, line_graph, path_graph, star_graph,
)
from edgespec.moments import moment_exact
from edgespec.sym_group import closed_character_values, permutation_character_22, word_product
from edgespec.weighted import (
    LabeledLineGraph, MonomialSpec, ReconstructionError, monomial_coefficient,
    pair_adjacency_from_coefficients, pair_coefficients, tree_by_search,
    tree_from_labeled_line_graph, weighted_reconstruction,
)

from conftest import trees_up_to


def touching(e, f):
    return bool(set(e) & set(f))


def labeled(edges, pairs):
    return LabeledLineGraph(tuple(edges), frozenset(frozenset(p) for p in pairs))


class TestMonomials:
    def test_square_is_dimension(self):
        for t in trees_up_to(8, n_min=4):
            e = t.edge_list[0]
            assert monomial_coefficient(t, MonomialSpec.of({e: 2})) == t.n * (t.n - 3) // 2

    def test_adjacent_pair(self):
        t = path_graph(6)
        assert monomial_coefficient(t, MonomialSpec.of({(0, 1): 1, (1, 2): 1})) == 2 * closed_character_values(6).alpha

    def test_quartic_n7(self):
        t = path_graph(7)
        assert monomial_coefficient(t, MonomialSpec.of({(0, 1): 2, (3, 4): 2})) == 84
        assert monomial_coefficient(t, MonomialSpec.of({(0, 1): 2, (1, 2): 2})) == 60

    def test_rejects_non_tree_and_foreign_edges(self):
        with pytest.raises(GraphError):
            monomial_coefficient(cycle_graph(5), MonomialSpec.of({(0, 1): 2}))
        with pytest.raises(ValueError):
            monomial_coefficient(path_graph(5), MonomialSpec.of({(0, 2): 2}))


class TestDichotomies:
    def test_p4_values(self):
        table, route = pair_coefficients(path_graph(4))
        assert route == "quadratic"
        assert {(pc.e, pc.f): pc.coeff for pc in table} == {
            ((0, 1), (1, 2)): -2, ((0, 1), (2, 3)): 4, ((1, 2), (2, 3)): -2,
        }

    def test_star_n7_quartic(self):
        table, route = pair_coefficients(star_graph(6))
        assert route == "quartic"
        assert {pc.coeff for pc in table} == {60}

    def test_alpha7_equals_beta7(self):
        cv = closed_character_values(7)
        assert cv.alpha == cv.beta == 2
        assert 6 * cv.d == 84 and 4 * cv.d + 2 * cv.alpha == 60

    @pytest.mark.parametrize("n", [4, 5, 6, 8, 9])
    def test_quadratic_exhaustive(self, n):
        cv = closed_character_values(n)
        for t in enumerate_free_trees(n):
            for e, f in combinations(t.edge_list, 2):
                c = monomial_coefficient(t, MonomialSpec.of({e: 1, f: 1}))
                assert c == (2 * cv.alpha if touching(e, f) else 2 * cv.beta)

    @pytest.mark.parametrize("n", range(4, 10))
    def test_quartic_exhaustive(self, n):
        cv = closed_character_values(n)
        for t in enumerate_free_trees(n):
            for e, f in combinations(t.edge_list, 2):
                c = monomial_coefficient(t, MonomialSpec.of({e: 2, f: 2}))
                assert c == (4 * cv.d + 2 * cv.alpha if touching(e, f) else 6 * cv.d)

    def test_diagonal_specialization(self):
        for t in trees_up_to(7, n_min=4):
            edges = t.edge_list
            for r in (1, 2, 3):
                total = 0
                for exps in product(range(r + 1), repeat=len(edges)):
                    if sum(exps) == r:
                        total += monomial_coefficient(t, MonomialSpec.of(dict(zip(edges, exps))))
                assert total == moment_exact(t, r)

    def test_word_count_oracle(self):
        """Alternating words give 3-cycles, the other four the identity."""
        e, f = (0, 1), (1, 2)
        words = [w for w in set(product([e, f], repeat=4)) if w.count(e) == 2]
        chars = sorted(permutation_character_22(word_product(w, 7)) for w in words)
        assert chars == [2, 2, 14, 14, 14, 14]


class TestLineGraphReconstruction:
    def test_triangle_gives_claw(self):
        edges = [(0, 1), (0, 2), (0, 3)]
        lg = labeled(edges, combinations(edges, 2))
        tree, mapping = tree_from_labeled_line_graph(lg, 4)
        assert is_isomorphic(tree, star_graph(3))
        assert set(mapping) == set(edges)

    def test_path(self):
        edges = [(0, 1), (1, 2), (2, 3)]
        lg = labeled(edges, [(edges[0], edges[1]), (edges[1], edges[2])])
        tree, _ = tree_from_labeled_line_graph(lg, 4)
        assert is_isomorphic(tree, path_graph(4))

    def test_rejects_non_line_graphs(self):
        labels = [(0, 1), (1, 2), (2, 3), (3, 4)]
        # a 4-cycle is not the line graph of a tree
        cyc = labeled(labels, [(labels[i], labels[(i + 1) % 4]) for i in range(4)])
        with pytest.raises(ReconstructionError):
            tree_from_labeled_line_graph(cyc, 5)
        # disconnected
        with pytest.raises(ReconstructionError):
            tree_from_labeled_line_graph(labeled(labels, [(labels[0], labels[1])]), 5)
        with pytest.raises(ReconstructionError):
            tree_from_labeled_line_graph(labeled(labels, []), 4)

    def test_roundtrip_and_bruteforce(self):
        for n in range(4, 11):
            trees = list(enumerate_free_trees(n))
            for t in trees:
                lg = labeled(t.edge_list, [(e, f) for e, f in combinations(t.edge_list, 2) if touching(e, f)])
                assert lg.as_graph() == line_graph(t)
                rebuilt, mapping = tree_from_labeled_line_graph(lg, n)
                assert is_isomorphic(rebuilt, t)
                for e, f in combinations(t.edge_list, 2):
                    assert touching(mapping[e], mapping[f]) == touching(e, f)
                if n <= 8:
                    assert is_isomorphic(tree_by_search(lg, n, trees), rebuilt)


class TestWeightedReconstruction:
    def test_p4(self):
        res = weighted_reconstruction(path_graph(4))
        assert is_isomorphic(res.tree, path_graph(4))

    def test_pair_adjacency_is_line_graph(self):
        for t in trees_up_to(9, n_min=4):
            assert pair_adjacency_from_coefficients(t).as_graph() == line_graph(t)

    def test_n7_quartic_route(self):
        trees = list(enumerate_free_trees(7))
        assert len(trees) == 11
        for t in trees:
            res = weighted_reconstruction(t)
            assert res.route == "quartic"
            assert is_isomorphic(res.tree, t)

    def test_n10_quadratic_route(self):
        trees = list(enumerate_free_trees(10))
        assert len(trees) == 106
        for t in trees:
            res = weighted_reconstruction(t)
            assert res.route == "quadratic"
            assert is_isomorphic(res.tree, t)
