"""Trace moments M_r = tr((X_G|W_n)^r) by independent routes.

* ``moment_oracle`` sums the (n-2,2) character over all edge words.
* ``moment_exact`` takes tr(X^r) on V_n minus tr((mI - L)^r) on C^n.
* ``moments_from_charpoly`` applies Newton's identities to charpoly_22.
* ``closed_m1/2/3`` evaluate the closed formulas in terms of subgraph counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Literal, Sequence

from .edge_operator import build_full_operator, build_vertex_operator, charpoly_22
from .graph_core import Graph, GraphError, forest_canonical_code, three_edge_counts
from .polynomial import IntPolynomial, power_sums_from_charpoly, power_traces
from .sym_group import RepresentationAbsentError, chi22, closed_character_values

Method = Literal["oracle", "trace_difference", "newton", "closed_form"]

DEFAULT_WORD_BUDGET = 10**8
DEFAULT_MULTISET_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class MomentReport:
    r: int
    value: int
    method: Method

    def to_dict(self, graph6: str | None = None) -> dict:
        out = {"r": self.r, "method": self.method, "value": str(self.value)}
        if graph6 is not None:
            out = {"graph6": graph6, **out}
        return out


def _require_rep(n: int) -> None:
    if n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={n}")


# ---------------------------------------------------------------------------
# word-sum oracle
# ---------------------------------------------------------------------------

def _cycle_data(images: list[int]) -> tuple[list[int], list[int], list[int], int, int]:
    """Cycle id, position within cycle, cycle lengths, fixed points, 2-cycles."""
    n = len(images)
    cyc = [-1] * n
    pos = [0] * n
    lengths: list[int] = []
    for start in range(n):
        if cyc[start] >= 0:
            continue
        cid, x, k = len(lengths), start, 0
        while cyc[x] < 0:
            cyc[x], pos[x] = cid, k
            x = images[x]
            k += 1
        lengths.append(k)
    c1 = lengths.count(1)
    c2 = lengths.count(2)
    return cyc, pos, lengths, c1, c2


def _leaf_characters(images: list[int], letters: Sequence[tuple[int, int]]) -> list[int]:
    """chi22 of (P * tau_e) for each letter e, in O(1) per letter.

    Right multiplication by (i j) splits the cycle of P through i and j into
    pieces of length dist and L - dist, or merges two cycles.
    """
    cyc, pos, lengths, c1, c2 = _cycle_data(images)
    out = []
    for i, j in letters:
        a, b = cyc[i], cyc[j]
        if a == b:
            big = lengths[a]
            dist = (pos[j] - pos[i]) % big
            removed = (big,)
            added = (dist, big - dist)
        else:
            removed = (lengths[a], lengths[b])
            added = (lengths[a] + lengths[b],)
        f1 = c1 - removed.count(1) + added.count(1)
        f2 = c2 - removed.count(2) + added.count(2)
        out.append(chi22(f1, f2))
    return out


def word_character_sum(edges: Sequence[tuple[int, int]], n: int, r: int) -> int:
    """Sum of chi^{(n-2,2)}(tau_{e_1} ... tau_{e_r}) over all words in ``edges``^r."""
    if r == 0:
        return chi22(n, 0)
    images = list(range(n))
    total = 0

    def descend(depth: int) -> None:
        nonlocal total
        if depth == r - 1:
            total += sum(_leaf_characters(images, edges))
            return
        for u, v in edges:
            images[u], images[v] = images[v], images[u]
            descend(depth + 1)
            images[u], images[v] = images[v], images[u]

    descend(0)
    return total


def moment_oracle(g: Graph, r: int, budget: int = DEFAULT_WORD_BUDGET) -> int:
    _require_rep(g.n)
    if r < 1:
        raise ValueError("moment order must be >= 1")
    words = g.m ** r
    if words > budget:
        raise BudgetExceededError(
            f"oracle needs {words} words (m={g.m}, r={r}); budget is {budget}"
        )
    if g.m == 0:
        return 0
    return word_character_sum(g.edge_list, g.n, r)


# ---------------------------------------------------------------------------
# exact trace difference and Newton route
# ---------------------------------------------------------------------------

def moment_table_exact(g: Graph, r_max: int) -> list[int]:
    """[M_1, ..., M_r_max] via tr(X^r on V_n) - tr((mI - L)^r)."""
    _require_rep(g.n)
    full = power_traces(build_full_operator(g), r_max)
    vert = power_traces(build_vertex_operator(g), r_max)
    return [a - b for a, b in zip(full, vert)]


def moment_exact(g: Graph, r: int) -> int:
    return moment_table_exact(g, r)[r - 1]


def moments_from_charpoly(p: IntPolynomial, r_max: int) -> list[int]:
    return power_sums_from_charpoly(p, r_max)


def support_forest_profile(g: Graph) -> list[int]:
    """Moments M_1..M_d with d = dim W_n."""
    p = charpoly_22(g)
    return moments_from_charpoly(p, p.degree)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def closed_m1(g: Graph) -> int:
    _require_rep(g.n)
    n = g.n
    return g.m * (n - 3) * (n - 4) // 2


def closed_m2(g: Graph) -> int:
    _require_rep(g.n)
    cv = closed_character_values(g.n)
    m = g.m
    p = sum(comb(d, 2) for d in g.degrees)
    return m * cv.d + 2 * p * cv.alpha + (m * (m - 1) - 2 * p) * cv.beta


def closed_m3_variants(g: Graph) -> tuple[int, int]:
    """Cubic moment by the direct formula and by the form with d3 eliminated."""
    _require_rep(g.n)
    cv = closed_character_values(g.n)
    k = three_edge_counts(g)
    # cycle types needing more than n points cannot occur, and neither can
    # the subgraphs that would produce them
    if ("c32" in cv.inapplicable and k.q) or ("c222" in cv.inapplicable and k.d3):
        raise ArithmeticError(f"impossible subgraph count for n={g.n}: {k}")
    m = g.m
    base = cv.c2 * (m + 3 * m * (m - 1) + 6 * k.t)
    direct = base + 6 * cv.c4 * (k.s + k.r) + 6 * cv.c32 * k.q + 6 * cv.c222 * k.d3
    eliminated = (
        base
        + 6 * cv.c222 * comb(m, 3)
        + 6 * (cv.c4 - cv.c222) * (k.s + k.r)
        + 6 * (cv.c32 - cv.c222) * k.q
        - 6 * cv.c222 * k.t
    )
    return direct, eliminated


def closed_m3(g: Graph) -> int:
    direct, eliminated = closed_m3_variants(g)
    if direct != eliminated:
        raise ArithmeticError(f"cubic formulas disagree: {direct} != {eliminated}")
    return direct


def tree_cubic_combination(t: Graph, m3: int | None = None) -> int:
    """(2n-16)(s+r) + (n-9)q recovered from M_3 of a tree by removing the
    terms that depend on n alone."""
    if not t.is_tree():
        raise GraphError("tree_cubic_combination requires a tree")
    _require_rep(t.n)
    cv = closed_character_values(t.n)
    m = t.m
    if m3 is None:
        m3 = moment_exact(t, 3)
    rest = m3 - cv.c2 * (m + 3 * m * (m - 1)) - 6 * cv.c222 * comb(m, 3)
    if rest % 6:
        raise ArithmeticError("cubic remainder not divisible by 6")
    return rest // 6


def closed_form_moment(g: Graph, r: int) -> int:
    funcs = {1: closed_m1, 2: closed_m2, 3: closed_m3}
    if r not in funcs:
        raise ValueError("closed forms exist for r = 1, 2, 3 only")
    return funcs[r](g)


def moment_reports(
    g: Graph, r_max: int, methods: Iterable[Method] = ("trace_difference",),
    budget: int = DEFAULT_WORD_BUDGET,
) -> list[MomentReport]:
    out = []
    methods = list(methods)
    if "trace_difference" in methods:
        out += [MomentReport(r, v, "trace_difference") for r, v in enumerate(moment_table_exact(g, r_max), 1)]
    if "newton" in methods:
        vals = moments_from_charpoly(charpoly_22(g), r_max)
        out += [MomentReport(r, v, "newton") for r, v in enumerate(vals, 1)]
    if "oracle" in methods:
        out += [MomentReport(r, moment_oracle(g, r, budget), "oracle") for r in range(1, r_max + 1)]
    if "closed_form" in methods:
        out += [MomentReport(r, closed_form_moment(g, r), "closed_form") for r in range(1, min(r_max, 3) + 1)]
    return out


# ---------------------------------------------------------------------------
# support forests and universal coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ForestWithMultiplicity:
    forest: Graph
    alpha: dict[tuple[int, int], int] = field(hash=False)

    def __post_init__(self):
        f = self.forest
        if f.m != f.n - sum(1 for _ in _components(f)):
            raise GraphError("support forest must be acyclic")
        if any(d == 0 for d in f.degrees):
            raise GraphError("support forest must not have isolated vertices")
        if set(self.alpha) != set(f.edge_list):
            raise ValueError("multiplicities must be given for exactly the forest's edges")
        if any(a < 1 for a in self.alpha.values()):
            raise ValueError("multiplicities must be positive")

    @property
    def weight(self) -> int:
        return sum(self.alpha.values())


def _components(g: Graph) -> Iterable[int]:
    seen = 0
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        comp, stack = 1 << v, [v]
        while stack:
            x = stack.pop()
            new = g.adj[x] & ~comp
            comp |= new
            stack.extend(Graph.neighbors_of_mask(new))
        seen |= comp
        yield comp


def multiset_word_count(mults: Sequence[int]) -> int:
    return factorial(sum(mults)) // prod(factorial(k) for k in mults)


def multiset_character_sum(
    letters: Sequence[tuple[int, int]], mults: Sequence[int], n: int,
    budget: int = DEFAULT_MULTISET_BUDGET,
) -> int:
    """Sum of chi22 over all distinct orderings of the multiset where
    ``letters[k]`` occurs ``mults[k]`` times."""
    words = multiset_word_count(mults)
    if words > budget:
        raise BudgetExceededError(f"{words} orderings exceed the budget {budget}")
    remaining = list(mults)
    r = sum(remaining)
    images = list(range(n))
    total = 0

    def descend(depth: int) -> None:
        nonlocal total
        if depth == r - 1:
            last = [letters[k] for k, c in enumerate(remaining) if c]
            total += sum(_leaf_characters(images, last))
            return
        for k, (u, v) in enumerate(letters):
            if remaining[k]:
                remaining[k] -= 1
                images[u], images[v] = images[v], images[u]
                descend(depth + 1)
                images[u], images[v] = images[v], images[u]
                remaining[k] += 1

    if r == 0:
        return chi22(n, 0)
    descend(0)
    return total


def universal_coefficient(
    f: ForestWithMultiplicity, n: int, budget: int = DEFAULT_MULTISET_BUDGET,
    check_embedding: bool = True,
) -> int:
    """C_{F,alpha}(n): character sum over words using edge e exactly alpha_e times."""
    _require_rep(n)
    k = f.forest.n
    if n < k:
        raise ValueError(f"ambient size {n} is smaller than the forest ({k} vertices)")
    letters = list(f.forest.edge_list)
    mults = [f.alpha[e] for e in letters]
    value = multiset_character_sum(letters, mults, n, budget)
    if check_embedding:
        # reversed placement inside {0..n-1}
        flip = [(n - 1 - u, n - 1 - v) for u, v in letters]
        other = multiset_character_sum(flip, mults, n, budget)
        if other != value:
            raise ArithmeticError("universal coefficient depends on the embedding")
    return value


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """Tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in combinations(range(1, total), parts - 1):
        bounds = (0, *cut, total)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def forest_coefficient(forest: Graph, r: int, n: int) -> int:
    """C_{r,F}(n): sum of C_{F,alpha}(n) over alpha with support F and |alpha| = r."""
    edges = forest.edge_list
    total = 0
    for mults in _compositions(r, len(edges)):
        fm = ForestWithMultiplicity(forest, dict(zip(edges, mults)))
        total += universal_coefficient(fm, n, check_embedding=False)
    return total


def _compact(g: Graph, edges: Sequence[tuple[int, int]]) -> Graph:
    verts = sorted({x for e in edges for x in e})
    index = {x: i for i, x in enumerate(verts)}
    return Graph.from_edges(len(verts), ((index[a], index[b]) for a, b in edges))


def embedded_forest_counts(t: Graph, max_edges: int) -> dict[str, tuple[Graph, int]]:
    """Isomorphism type -> (representative, number of embedded copies) over all
    edge subsets of the tree with 1..max_edges edges."""
    out: dict[str, list] = {}
    for k in range(1, min(max_edges, t.m) + 1):
        for subset in combinations(t.edge_list, k):
            forest = _compact(t, subset)
            key = forest_canonical_code(forest)
            if key in out:
                out[key][1] += 1
            else:
                out[key] = [forest, 1]
    return {k: (v[0], v[1]) for k, v in out.items()}


def tree_expansion(t: Graph, r: int) -> int:
    """M_r(T) as sum over forest types of N_F(T) * C_{r,F}(n)."""
    if not t.is_tree():
        raise GraphError("tree expansion requires a tree")
    _require_rep(t.n)
    return sum(
        count * forest_coefficient(rep, r, t.n)
        for rep, count in embedded_forest_counts(t, r).values()
    )


def tree_expansion_check(t: Graph, r: int) -> bool:
    if r > 4:
        raise ValueError("tree_expansion_check is limited to r <= 4")
    return tree_expansion(t, r) == moment_exact(t, r)

