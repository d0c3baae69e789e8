"""Free-tree census grouped by Laplacian spectrum and split by charpoly_22,
plus the Godsil-McKay regular example."""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .edge_operator import charpoly_22
from .graph_core import (
    Graph, GraphError, adjacency_matrix, graph6_decode, graph6_encode, is_isomorphic,
    laplacian, tree_canonical_code,
)
from .moments import moment_table_exact
from .polynomial import IntPolynomial, charpoly_exact

GM_GRAPH6 = ("Ir_GYkuy?", "I]HTOYRRO")
GM_M6 = (175466984, 175467176)
MAX_TREE_ORDER = 16

# number of free trees on n vertices, n = 0..16
FREE_TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320)


class RegressionError(AssertionError):
    pass


# ---------------------------------------------------------------------------
# free trees
# ---------------------------------------------------------------------------
#
# A rooted tree is a tuple of child keys (size, index) in non-increasing
# order, where index points into rooted_trees(size).  Every free tree is
# listed once: rooted at its centroid when that is unique (all branches
# smaller than n/2), otherwise as two halves of n/2 vertices joined at
# their roots.

@lru_cache(maxsize=None)
def rooted_trees(size: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    if size < 1:
        return ()
    return tuple(_forests(size - 1, (size - 1, len(rooted_trees(size - 1)) - 1)))


def _forests(total: int, bound: tuple[int, int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """Non-increasing sequences of child keys, each <= bound, sizes summing to total."""
    if total == 0:
        yield ()
        return
    for size in range(min(total, bound[0]), 0, -1):
        top = bound[1] if size == bound[0] else len(rooted_trees(size)) - 1
        for idx in range(top, -1, -1):
            for rest in _forests(total - size, (size, idx)):
                yield ((size, idx),) + rest


def _attach(key_children: Sequence[tuple[int, int]], root: int, edges: list, counter: list) -> None:
    for size, idx in key_children:
        child = counter[0]
        counter[0] += 1
        edges.append((root, child))
        _attach(rooted_trees(size)[idx], child, edges, counter)


def _rooted_to_edges(children: Sequence[tuple[int, int]], start: int = 0):
    edges: list = []
    counter = [start + 1]
    _attach(children, start, edges, counter)
    return edges, counter[0]


def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of trees on n vertices."""
    if not 1 <= n <= MAX_TREE_ORDER:
        raise ValueError(f"tree order must be in 1..{MAX_TREE_ORDER}")
    half_limit = (n - 1) // 2
    if n == 1:
        yield Graph.empty(1)
        return
    for children in _forests(n - 1, (half_limit, len(rooted_trees(half_limit)) - 1) if half_limit else (0, 0)):
        edges, used = _rooted_to_edges(children)
        yield Graph.from_edges(n, edges)
    if n % 2 == 0:
        half = rooted_trees(n // 2)
        for i in range(len(half)):
            for j in range(i, len(half)):
                left, used = _rooted_to_edges(half[i])
                right, _ = _rooted_to_edges(half[j], start=used)
                yield Graph.from_edges(n, left + right + [(0, used)])


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass
class CensusRecord:
    n: int
    canonical_code: str
    graph6: str
    laplacian_charpoly: IntPolynomial
    class_id: int
    charpoly_22: IntPolynomial | None = None

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "canonical_code": self.canonical_code,
            "graph6": self.graph6,
            "laplacian_charpoly": self.laplacian_charpoly.to_strings(),
            "charpoly_22": None if self.charpoly_22 is None else self.charpoly_22.to_strings(),
            "class_id": self.class_id,
        })

    @classmethod
    def from_json(cls, line: str) -> "CensusRecord":
        d = json.loads(line)
        cp = d["charpoly_22"]
        return cls(
            n=d["n"], canonical_code=d["canonical_code"], graph6=d["graph6"],
            laplacian_charpoly=IntPolynomial.from_strings(d["laplacian_charpoly"]),
            class_id=d["class_id"],
            charpoly_22=None if cp is None else IntPolynomial.from_strings(cp),
        )


@dataclass(frozen=True)
class CensusSummary:
    n: int
    tree_count: int
    cospectral_class_count: int
    trees_in_classes: int
    unresolved_by_22: int

    CSV_HEADER = (
        "n", "number_of_trees", "laplacian_cospectral_classes", "trees_in_classes",
        "unresolved_by_22",
    )

    def row(self) -> tuple[int, int, int, int]:
        return (self.tree_count, self.cospectral_class_count, self.trees_in_classes, self.unresolved_by_22)

    def row_text(self) -> str:
        return ",".join(str(x) for x in self.row())


def summaries_to_csv(summaries: Iterable[CensusSummary]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CensusSummary.CSV_HEADER)
    for s in summaries:
        writer.writerow((s.n, *s.row()))
    return buf.getvalue()


def _tree_data(g6: str) -> tuple[str, tuple[int, ...]]:
    t = graph6_decode(g6)
    return tree_canonical_code(t), charpoly_exact(laplacian(t)).coeffs


def _charpoly_22_coeffs(g6: str) -> tuple[int, ...]:
    return charpoly_22(graph6_decode(g6)).coeffs


def _pmap(func, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


@dataclass
class CensusResult:
    summary: CensusSummary
    records: list[CensusRecord] = field(repr=False)

    def classes(self) -> dict[int, list[CensusRecord]]:
        out: dict[int, list[CensusRecord]] = defaultdict(list)
        for rec in self.records:
            out[rec.class_id].append(rec)
        return {k: v for k, v in out.items() if len(v) >= 2}

    def write_jsonl(self, path: str | Path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            for rec in self.records:
                fh.write(rec.to_json() + "\n")


def run_census(n: int, jobs: int = 1) -> CensusResult:
    if not 4 <= n <= MAX_TREE_ORDER:
        raise ValueError(f"census order must be in 4..{MAX_TREE_ORDER}")
    codes = [graph6_encode(t) for t in enumerate_free_trees(n)]
    data = _pmap(_tree_data, codes, jobs)

    class_of: dict[tuple[int, ...], int] = {}
    records = []
    for g6, (canon, lap) in zip(codes, data):
        cid = class_of.setdefault(lap, len(class_of))
        records.append(CensusRecord(n, canon, g6, IntPolynomial(lap), cid))

    members: dict[int, list[CensusRecord]] = defaultdict(list)
    for rec in records:
        members[rec.class_id].append(rec)
    nontrivial = [recs for recs in members.values() if len(recs) >= 2]
    todo = [rec for recs in nontrivial for rec in recs]
    for rec, coeffs in zip(todo, _pmap(_charpoly_22_coeffs, [r.graph6 for r in todo], jobs)):
        rec.charpoly_22 = IntPolynomial(coeffs)

    unresolved = 0
    for recs in nontrivial:
        seen: dict[tuple[int, ...], int] = defaultdict(int)
        for rec in recs:
            seen[rec.charpoly_22.coeffs] += 1
        unresolved += sum(k for k in seen.values() if k >= 2)

    summary = CensusSummary(
        n=n,
        tree_count=len(records),
        cospectral_class_count=len(nontrivial),
        trees_in_classes=len(todo),
        unresolved_by_22=unresolved,
    )
    return CensusResult(summary, records)


# ---------------------------------------------------------------------------
# Godsil-McKay switching
# ---------------------------------------------------------------------------

class SwitchingError(ValueError):
    pass


def adjacency_charpoly(g: Graph) -> IntPolynomial:
    return charpoly_exact(adjacency_matrix(g))


def gm_switch(g: Graph, c: Iterable[int]) -> Graph:
    """Godsil-McKay switch with respect to the vertex set ``c``.

    ``c`` must induce a regular subgraph and every outside vertex must have
    0, |c|/2 or |c| neighbours in it; outside vertices with exactly |c|/2
    neighbours have their adjacencies to ``c`` complemented.
    """
    cset = sorted(set(c))
    if any(not 0 <= v < g.n for v in cset):
        raise SwitchingError("switching set has vertices outside the graph")
    if not cset:
        return g
    mask = sum(1 << v for v in cset)
    size = len(cset)
    if len({(g.adj[v] & mask).bit_count() for v in cset}) != 1:
        raise SwitchingError("switching set does not induce a regular subgraph")
    flips = []
    for v in range(g.n):
        if (mask >> v) & 1:
            continue
        k = (g.adj[v] & mask).bit_count()
        if 2 * k == size:
            flips.append(v)
        elif k not in (0, size):
            raise SwitchingError(f"vertex {v} has {k} neighbours in a switching set of size {size}")
    rows = list(g.adj)
    for v in flips:
        rows[v] ^= mask
        for u in cset:
            rows[u] ^= 1 << v
    out = Graph(g.n, tuple(rows))
    if adjacency_charpoly(out) != adjacency_charpoly(g):
        raise ArithmeticError("switched graph is not adjacency-cospectral")
    return out


def find_gm_switch(g: Graph, target: Graph, max_size: int | None = None) -> tuple[int, ...] | None:
    """Smallest switching set turning ``g`` into a graph isomorphic to ``target``."""
    max_size = g.n - 1 if max_size is None else max_size
    for size in range(2, max_size + 1, 2):
        for cset in combinations(range(g.n), size):
            try:
                switched = gm_switch(g, cset)
            except SwitchingError:
                continue
            if switched != g and is_isomorphic(switched, target):
                return cset
    return None


@dataclass(frozen=True)
class GMVerdict:
    adjacency_cospectral: bool
    laplacian_cospectral: bool
    isomorphic: bool
    regular_degrees: tuple[int | None, int | None]
    first_differing_moment: int | None
    moment_values: dict[int, tuple[int, int]]

    def to_dict(self) -> dict:
        return {
            "graph6": list(GM_GRAPH6),
            "adjacency_cospectral": self.adjacency_cospectral,
            "laplacian_cospectral": self.laplacian_cospectral,
            "isomorphic": self.isomorphic,
            "regular_degrees": list(self.regular_degrees),
            "first_differing_moment": self.first_differing_moment,
            "moment_values": {str(r): [str(a), str(b)] for r, (a, b) in self.moment_values.items()},
        }


def _regular_degree(g: Graph) -> int | None:
    degs = set(g.degrees)
    return degs.pop() if len(degs) == 1 else None


def compare_moments(g1: Graph, g2: Graph, r_max: int) -> tuple[int | None, dict[int, tuple[int, int]]]:
    a = moment_table_exact(g1, r_max)
    b = moment_table_exact(g2, r_max)
    values = {r: (x, y) for r, (x, y) in enumerate(zip(a, b), 1)}
    first = next((r for r, (x, y) in values.items() if x != y), None)
    return first, values


def gm_verdict(g1: Graph, g2: Graph, r_max: int = 6) -> GMVerdict:
    first, values = compare_moments(g1, g2, r_max)
    return GMVerdict(
        adjacency_cospectral=adjacency_charpoly(g1) == adjacency_charpoly(g2),
        laplacian_cospectral=charpoly_exact(laplacian(g1)) == charpoly_exact(laplacian(g2)),
        isomorphic=is_isomorphic(g1, g2),
        regular_degrees=(_regular_degree(g1), _regular_degree(g2)),
        first_differing_moment=first,
        moment_values=values,
    )


def verify_gm_example() -> GMVerdict:
    g1, g2 = (graph6_decode(s) for s in GM_GRAPH6)
    verdict = gm_verdict(g1, g2, 6)
    checks = [
        (verdict.regular_degrees == (4, 4), f"degrees {verdict.regular_degrees}, expected 4-regular"),
        (verdict.adjacency_cospectral, "graphs are not adjacency-cospectral"),
        (verdict.laplacian_cospectral, "graphs are not Laplacian-cospectral"),
        (not verdict.isomorphic, "graphs are isomorphic"),
        (verdict.moment_values[6] == GM_M6, f"M_6 = {verdict.moment_values[6]}, expected {GM_M6}"),
        (verdict.first_differing_moment == 6,
         f"first differing moment {verdict.first_differing_moment}, expected 6"),
    ]
    for ok, message in checks:
        if not ok:
            raise RegressionError(message)
    return verdict


def is_tree_list_complete(n: int, trees: Sequence[Graph]) -> bool:
    """True when ``trees`` has the expected count and no isomorphic duplicates."""
    if len(trees) != FREE_TREE_COUNTS[n]:
        return False
    try:
        codes = {tree_canonical_code(t) for t in trees}
    except GraphError:
        return False
    return len(codes) == len(trees)
