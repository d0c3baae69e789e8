from itertools import product

import numpy as np
import pytest

from edgespec.edge_operator import charpoly_22, restricted_operator
from edgespec.graph_core import (
    Graph, GraphError, complete_graph, cycle_graph, path_graph, star_graph, three_edge_counts,
)
from edgespec.moments import (
    BudgetExceededError, ForestWithMultiplicity, closed_m1, closed_m2, closed_m3,
    closed_m3_variants, embedded_forest_counts, moment_exact, moment_oracle,
    moment_reports, moment_table_exact, moments_from_charpoly, support_forest_profile,
    tree_cubic_combination, tree_expansion, tree_expansion_check, universal_coefficient,
)
from edgespec.sym_group import closed_character_values, permutation_character_22, word_product

from conftest import random_graph, random_relabel, trees_up_to


def naive_word_sum(g, r):
    return sum(
        permutation_character_22(word_product(word, g.n))
        for word in product(g.edge_list, repeat=r)
    )


def padded(g, n):
    return Graph.from_edges(n, g.edge_list)


class TestOracle:
    def test_examples(self):
        assert moment_oracle(star_graph(4), 1) == 4
        assert moment_oracle(path_graph(4), 2) == 6
        assert moment_oracle(path_graph(5), 3) == 40

    def test_matches_naive_enumeration(self, rng):
        for _ in range(25):
            g = random_graph(rng, rng.randint(4, 7), 0.4)
            for r in (1, 2, 3):
                assert moment_oracle(g, r) == naive_word_sum(g, r)

    def test_budget(self, gm_pair):
        with pytest.raises(BudgetExceededError, match="64000000 words"):
            moment_oracle(gm_pair[0], 6, budget=10**7)

    def test_empty_graph(self):
        assert moment_oracle(Graph.empty(5), 3) == 0


class TestExact:
    def test_first_moment_formula(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(4, 9), rng.random())
            assert moment_exact(g, 1) == g.m * (g.n - 3) * (g.n - 4) // 2

    def test_gm_sixth_moment(self, gm_pair):
        assert moment_exact(gm_pair[0], 6) == 175466984
        assert moment_exact(gm_pair[1], 6) == 175467176

    def test_against_numeric_restriction(self, rng):
        for _ in range(10):
            g = random_graph(rng, rng.randint(4, 8), rng.random())
            a = restricted_operator(g)
            numeric = [np.trace(np.linalg.matrix_power(a, r)) for r in range(1, 6)]
            assert np.allclose(moment_table_exact(g, 5), numeric, rtol=1e-9, atol=1e-6)

    def test_relabel_invariance(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(4, 9), rng.random())
            assert moment_table_exact(g, 5) == moment_table_exact(random_relabel(rng, g), 5)


class TestNewtonRoute:
    def test_gm(self, gm_pair):
        assert moments_from_charpoly(charpoly_22(gm_pair[0]), 6)[-1] == 175466984

    def test_profile_length(self):
        prof = support_forest_profile(path_graph(6))
        assert len(prof) == 9
        assert prof[:4] == moment_table_exact(path_graph(6), 4)


class TestClosedForms:
    def test_m1(self, gm_pair):
        assert closed_m1(path_graph(4)) == 0
        assert closed_m1(star_graph(4)) == 4
        assert closed_m1(gm_pair[0]) == 420 == moment_exact(gm_pair[0], 1)

    def test_m2(self, gm_pair):
        assert closed_m2(path_graph(4)) == 6
        assert closed_m2(Graph.empty(6)) == 0
        assert closed_m2(gm_pair[0]) == 5240 == moment_exact(gm_pair[0], 2)

    def test_m3(self):
        assert closed_m3(path_graph(5)) == 40
        assert closed_m3(Graph.empty(6)) == 0
        k3 = padded(complete_graph(3), 6)
        c2 = closed_character_values(6).c2
        assert closed_m3(k3) == 27 * c2 == moment_oracle(k3, 3)

    def test_variants_agree(self, rng):
        for _ in range(60):
            g = random_graph(rng, rng.randint(4, 10), rng.random())
            a, b = closed_m3_variants(g)
            assert a == b == moment_exact(g, 3)

    @pytest.mark.parametrize("g", [complete_graph(6), cycle_graph(7), complete_graph(4)])
    def test_dense_examples(self, g):
        assert [closed_m1(g), closed_m2(g), closed_m3(g)] == moment_table_exact(g, 3)


class TestTreeCubic:
    def test_combination(self):
        for t in trees_up_to(10, n_min=4):
            k = three_edge_counts(t)
            n = t.n
            assert tree_cubic_combination(t) == (2 * n - 16) * (k.s + k.r) + (n - 9) * k.q

    def test_rejects_non_tree(self):
        with pytest.raises(GraphError):
            tree_cubic_combination(cycle_graph(5))


class TestUniversalCoefficient:
    def test_single_edge_squared(self):
        f = ForestWithMultiplicity(path_graph(2), {(0, 1): 2})
        for n in range(4, 10):
            assert universal_coefficient(f, n) == n * (n - 3) // 2

    def test_adjacent_pair(self):
        f = ForestWithMultiplicity(path_graph(3), {(0, 1): 1, (1, 2): 1})
        for n in range(4, 10):
            assert universal_coefficient(f, n) == 2 * closed_character_values(n).alpha

    def test_disjoint_squares_n7(self):
        f = ForestWithMultiplicity(Graph.from_edges(4, [(0, 1), (2, 3)]), {(0, 1): 2, (2, 3): 2})
        assert universal_coefficient(f, 7) == 84

    def test_validation(self):
        with pytest.raises(GraphError):
            ForestWithMultiplicity(complete_graph(3), {e: 1 for e in complete_graph(3).edge_list})
        with pytest.raises(GraphError):
            ForestWithMultiplicity(Graph.from_edges(3, [(0, 1)]), {(0, 1): 1})
        f = ForestWithMultiplicity(path_graph(5), {e: 1 for e in path_graph(5).edge_list})
        with pytest.raises(ValueError):
            universal_coefficient(f, 4)
        with pytest.raises(BudgetExceededError):
            universal_coefficient(f, 6, budget=10)

    def test_embedding_independence(self, rng):
        forest = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
        alpha = {e: rng.randint(1, 2) for e in forest.edge_list}
        base = universal_coefficient(ForestWithMultiplicity(forest, alpha), 9)
        perm = list(range(6))
        rng.shuffle(perm)
        moved = forest.relabel(perm)
        alpha2 = {tuple(sorted((perm[u], perm[v]))): k for (u, v), k in alpha.items()}
        assert universal_coefficient(ForestWithMultiplicity(moved, alpha2), 9) == base


class TestTreeExpansion:
    def test_examples(self):
        assert tree_expansion(path_graph(5), 3) == 40
        assert tree_expansion_check(path_graph(5), 3)
        assert tree_expansion_check(star_graph(3), 2)
        for t in trees_up_to(7, n_min=4):
            assert tree_expansion_check(t, 1)

    def test_forest_counts_p5(self):
        counts = embedded_forest_counts(path_graph(5), 2)
        assert sorted(c for _, c in counts.values()) == [3, 3, 4]

    def test_rejects_non_tree(self):
        with pytest.raises(GraphError):
            tree_expansion(cycle_graph(5), 2)


def test_reports(gm_pair):
    reps = moment_reports(path_graph(5), 3, ["oracle", "trace_difference", "newton", "closed_form"])
    assert {(r.r, r.value) for r in reps} == {(1, 4), (2, 20), (3, 40)}
    d = reps[-1].to_dict("DhC")
    assert d == {"graph6": "DhC", "r": 3, "method": "closed_form", "value": "40"}
