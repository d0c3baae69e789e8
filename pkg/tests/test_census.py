import json

import networkx as nx
import pytest

from edgespec.census import (
    FREE_TREE_COUNTS, GM_GRAPH6, CensusRecord, CensusSummary, SwitchingError,
    adjacency_charpoly, enumerate_free_trees, find_gm_switch, gm_switch, gm_verdict,
    is_tree_list_complete, rooted_trees, run_census, summaries_to_csv, verify_gm_example,
)
from edgespec.graph_core import Graph, graph6_decode, is_isomorphic, path_graph



class TestEnumeration:
    def test_rooted_counts(self):
        assert [len(rooted_trees(k)) for k in range(1, 13)] == [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766]

    @pytest.mark.parametrize("n", range(1, 16))
    def test_counts_and_distinct(self, n):
        trees = list(enumerate_free_trees(n))
        assert len(trees) == FREE_TREE_COUNTS[n]
        assert all(t.is_tree() and t.n == n for t in trees)
        assert is_tree_list_complete(n, trees)

    def test_networkx_counts(self):
        for n in range(1, 12):
            assert len(list(enumerate_free_trees(n))) == sum(1 for _ in nx.nonisomorphic_trees(n)) if n > 1 else 1

    def test_published_counts(self):
        assert FREE_TREE_COUNTS[11:16] == (235, 551, 1301, 3159, 7741)

    def test_range(self):
        with pytest.raises(ValueError):
            list(enumerate_free_trees(0))
        with pytest.raises(ValueError):
            list(enumerate_free_trees(17))


class TestCensus:
    @pytest.mark.parametrize("n", range(4, 11))
    def test_no_classes_up_to_10(self, n):
        s = run_census(n).summary
        assert s.row() == (FREE_TREE_COUNTS[n], 0, 0, 0)

    def test_n11(self, tmp_path):
        res = run_census(11)
        assert res.summary.row_text() == "235,3,6,0"
        classes = res.classes()
        assert sorted(len(v) for v in classes.values()) == [2, 2, 2]
        for recs in classes.values():
            assert len({r.laplacian_charpoly for r in recs}) == 1
            assert len({r.charpoly_22 for r in recs}) == len(recs)
            assert not is_isomorphic(graph6_decode(recs[0].graph6), graph6_decode(recs[1].graph6))
        # singleton classes keep charpoly_22 unset
        assert sum(r.charpoly_22 is not None for r in res.records) == 6
        assert len({r.canonical_code for r in res.records}) == 235

        out = tmp_path / "a.jsonl"
        res.write_jsonl(out)
        again = tmp_path / "b.jsonl"
        run_census(11).write_jsonl(again)
        assert out.read_bytes() == again.read_bytes()
        lines = out.read_text().splitlines()
        assert len(lines) == 235
        first = json.loads(lines[0])
        assert list(first) == ["n", "canonical_code", "graph6", "laplacian_charpoly", "charpoly_22", "class_id"]
        assert all(isinstance(c, str) for c in first["laplacian_charpoly"])
        assert CensusRecord.from_json(lines[0]) == res.records[0]

    def test_class_ids_by_first_occurrence(self):
        res = run_census(9)
        ids = [r.class_id for r in res.records]
        assert ids == list(range(len(ids)))

    def test_parallel_matches_serial(self):
        a = run_census(11, jobs=2)
        b = run_census(11, jobs=1)
        assert [r.to_json() for r in a.records] == [r.to_json() for r in b.records]

    def test_csv(self):
        text = summaries_to_csv([CensusSummary(11, 235, 3, 6, 0)])
        assert text.splitlines() == [
            "n,number_of_trees,laplacian_cospectral_classes,trees_in_classes,unresolved_by_22",
            "11,235,3,6,0",
        ]


class TestSwitching:
    def test_empty_set(self, gm_pair):
        assert gm_switch(gm_pair[0], []) == gm_pair[0]

    def test_trivial_set(self):
        # every outside vertex sees 0 or all of c
        g = Graph.from_edges(5, [(0, 1), (2, 0), (2, 1), (3, 4)])
        assert gm_switch(g, [0, 1]) == g

    def test_invalid(self):
        g = path_graph(5)
        with pytest.raises(SwitchingError):
            gm_switch(g, [0, 1, 2, 3])

    def test_random_switches_are_cospectral(self, rng):
        changed = 0
        for _ in range(10):
            # c = {0,1,2,3} inducing a 4-cycle; outside vertices see 0, 2 or 4 of c
            edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
            for v in range(4, 10):
                k = rng.choice([0, 2, 4])
                edges += [(u, v) for u in rng.sample(range(4), k)]
            edges += [(u, v) for u in range(4, 10) for v in range(u + 1, 10) if rng.random() < 0.5]
            g = Graph.from_edges(10, edges)
            h = gm_switch(g, [0, 1, 2, 3])
            assert adjacency_charpoly(h) == adjacency_charpoly(g)
            changed += h != g
        assert changed > 0

    def test_gm_pair_related_by_switch(self, gm_pair):
        c = find_gm_switch(*gm_pair, max_size=4)
        assert c is not None
        assert is_isomorphic(gm_switch(gm_pair[0], c), gm_pair[1])


class TestGM:
    def test_verdict(self):
        v = verify_gm_example()
        assert v.moment_values[6] == (175466984, 175467176)
        assert all(a == b for r, (a, b) in v.moment_values.items() if r <= 5)
        assert v.first_differing_moment == 6
        assert not v.isomorphic and v.adjacency_cospectral and v.laplacian_cospectral

    def test_self_comparison(self, gm_pair):
        v = gm_verdict(gm_pair[0], gm_pair[0], 4)
        assert v.first_differing_moment is None and v.isomorphic

    def test_serialization(self):
        d = verify_gm_example().to_dict()
        assert d["graph6"] == list(GM_GRAPH6)
        assert d["moment_values"]["6"] == ["175466984", "175467176"]
