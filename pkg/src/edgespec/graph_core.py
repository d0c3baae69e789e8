"""Simple undirected graphs on {0..n-1}: graph6 codec, Laplacian, three-edge
subgraph counts, line graphs and isomorphism testing for small graphs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

MAX_VERTICES = 62


class GraphError(ValueError):
    """Malformed graph input or an operation outside its domain."""


class Graph6Error(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbour bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or (row >> v) & 1:
                raise GraphError(f"bad adjacency row for vertex {v}")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not (self.adj[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        row, out = self.adj[v], []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j) for i in range(self.n) for j in range(i + 1, self.n) if (self.adj[i] >> j) & 1
        )

    @property
    def m(self) -> int:
        return len(self.edge_list)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edge_list))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen, stack = 1, [0]
        while stack:
            v = stack.pop()
            new = self.adj[v] & ~seen
            seen |= new
            stack.extend(self.neighbors_of_mask(new))
        return seen == (1 << self.n) - 1

    @staticmethod
    def neighbors_of_mask(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edge_list)})"


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def graph6_decode(text: str | bytes) -> Graph:
    if isinstance(text, str):
        text = text.strip().encode("ascii", errors="strict")
    else:
        text = text.strip()
    if text.startswith(b">>graph6<<"):
        text = text[len(b">>graph6<<"):]
    if not text:
        raise Graph6Error("empty graph6 string")
    for pos, byte in enumerate(text):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte!r} at position {pos} outside [63, 126]")
    if text[0] == 126:
        raise Graph6Error("multi-byte size prefix (n > 62) is not supported")
    n = text[0] - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = text[1:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    bits = 0
    for byte in body:
        bits = (bits << 6) | (byte - 63)
    pad = 6 * nbytes - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    bits >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (bits >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


def graph6_encode(g: Graph) -> str:
    if g.n > MAX_VERTICES:
        raise Graph6Error(f"n={g.n} needs a multi-byte size prefix; unsupported")
    out = [chr(g.n + 63)]
    chunk, filled = 0, 0
    for j in range(1, g.n):
        for i in range(j):
            chunk = (chunk << 1) | ((g.adj[i] >> j) & 1)
            filled += 1
            if filled == 6:
                out.append(chr(chunk + 63))
                chunk, filled = 0, 0
    if filled:
        out.append(chr((chunk << (6 - filled)) + 63))
    return "".join(out)


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse lines of ``u v`` pairs; blank lines and ``#`` comments are ignored."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex index") from None
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# matrices and counts
# ---------------------------------------------------------------------------

def adjacency_matrix(g: Graph) -> list[list[int]]:
    return [[(g.adj[i] >> j) & 1 for j in range(g.n)] for i in range(g.n)]


def laplacian(g: Graph) -> list[list[int]]:
    mat = [[-((g.adj[i] >> j) & 1) for j in range(g.n)] for i in range(g.n)]
    for v, d in enumerate(g.degrees):
        mat[v][v] = d
    return mat


def two_paths(g: Graph) -> int:
    """Number of unordered pairs of edges sharing a vertex."""
    return sum(comb(d, 2) for d in g.degrees)


@dataclass(frozen=True)
class ThreeEdgeCounts:
    t: int
    s: int
    r: int
    q: int
    d3: int
    p: int

    @property
    def total(self) -> int:
        return self.t + self.s + self.r + self.q + self.d3


def _classify_triple(e1, e2, e3) -> str:
    deg = Counter((*e1, *e2, *e3))
    nv = len(deg)
    if nv == 3:
        return "t"
    if nv == 4:
        return "s" if max(deg.values()) == 3 else "r"
    if nv == 5:
        return "q"
    return "d3"


def three_edge_counts(g: Graph) -> ThreeEdgeCounts:
    """Classify every 3-subset of edges by the isomorphism type of its union."""
    tally = Counter(_classify_triple(*tri) for tri in combinations(g.edge_list, 3))
    return ThreeEdgeCounts(
        t=tally["t"], s=tally["s"], r=tally["r"], q=tally["q"], d3=tally["d3"], p=two_paths(g)
    )


def tree_closed_counts(tree: Graph) -> ThreeEdgeCounts:
    """Three-edge counts of a tree from degree data alone."""
    if not tree.is_tree():
        raise GraphError("tree_closed_counts requires a tree")
    n, deg = tree.n, tree.degrees
    m = n - 1
    s = sum(comb(d, 3) for d in deg)
    r = sum((deg[u] - 1) * (deg[v] - 1) for u, v in tree.edge_list)
    q = 0
    for v in range(n):
        for u, w in combinations(tree.neighbors(v), 2):
            q += m - deg[u] - deg[v] - deg[w] + 2
    d3 = comb(m, 3) - s - r - q
    return ThreeEdgeCounts(t=0, s=s, r=r, q=q, d3=d3, p=two_paths(tree))


def line_graph(g: Graph) -> Graph:
    edges = g.edge_list
    pairs = [
        (a, b)
        for a, b in combinations(range(len(edges)), 2)
        if set(edges[a]) & set(edges[b])
    ]
    return Graph.from_edges(len(edges), pairs)


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def tree_centers(tree: Graph) -> list[int]:
    """Centre vertices (one or two) found by repeatedly stripping leaves."""
    n = tree.n
    if n <= 2:
        return list(range(n))
    deg = list(tree.degrees)
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for u in tree.neighbors(v):
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt
    return sorted(layer)


def _rooted_code(tree: Graph, root: int, parent: int = -1) -> str:
    kids = sorted(_rooted_code(tree, c, root) for c in tree.neighbors(root) if c != parent)
    return "(" + "".join(kids) + ")"


def tree_canonical_code(tree: Graph) -> str:
    """AHU parenthesis code rooted at the centre; a bicentral tree is rooted
    at the central edge so both halves appear in sorted order."""
    if not tree.is_tree():
        raise GraphError("tree_canonical_code requires a tree")
    centers = tree_centers(tree)
    if len(centers) == 1:
        return _rooted_code(tree, centers[0])
    a, b = centers
    halves = sorted((_rooted_code(tree, a, b), _rooted_code(tree, b, a)))
    return "[" + halves[0] + halves[1] + "]"


def forest_canonical_code(g: Graph) -> str:
    """Code of an acyclic graph; isolated vertices are ignored."""
    seen = 0
    parts = []
    for v in range(g.n):
        if (seen >> v) & 1 or not g.adj[v]:
            continue
        comp, stack = 1 << v, [v]
        while stack:
            x = stack.pop()
            new = g.adj[x] & ~comp
            comp |= new
            stack.extend(Graph.neighbors_of_mask(new))
        seen |= comp
        verts = Graph.neighbors_of_mask(comp)
        index = {x: i for i, x in enumerate(verts)}
        sub = Graph.from_edges(
            len(verts), ((index[a], index[b]) for a, b in g.edge_list if a in index and b in index)
        )
        parts.append(tree_canonical_code(sub))
    return "+".join(sorted(parts))


def _refine(graphs: tuple[Graph, Graph], colors: list[list[int]]) -> list[list[int]] | None:
    """Joint colour refinement of two graphs; None if the colourings diverge."""
    while True:
        sigs = []
        for g, col in zip(graphs, colors):
            sigs.append([
                (col[v], tuple(sorted(col[u] for u in g.neighbors(v)))) for v in range(g.n)
            ])
        palette = {s: i for i, s in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        new = [[palette[s] for s in sig] for sig in sigs]
        if Counter(new[0]) != Counter(new[1]):
            return None
        if len(set(new[0])) == len(set(colors[0])):
            return new
        colors = new


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees) != sorted(g2.degrees):
        return False
    if g1.is_tree():
        return g2.is_tree() and tree_canonical_code(g1) == tree_canonical_code(g2)
    pair = (g1, g2)

    def search(colors) -> bool:
        colors = _refine(pair, colors)
        if colors is None:
            return False
        c1, c2 = colors
        sizes = Counter(c1)
        if all(k == 1 for k in sizes.values()):
            where = {c: v for v, c in enumerate(c2)}
            phi = [where[c] for c in c1]
            return all(g2.has_edge(phi[u], phi[v]) for u, v in g1.edge_list)
        target = min((k, c) for c, k in sizes.items() if k > 1)[1]
        v = c1.index(target)
        fresh = max(max(c1), max(c2)) + 1
        for w in (x for x in range(g2.n) if c2[x] == target):
            n1, n2 = list(c1), list(c2)
            n1[v], n2[w] = fresh, fresh
            if search([n1, n2]):
                return True
        return False

    return search([list(g1.degrees), list(g2.degrees)])


# ---------------------------------------------------------------------------
# named families, handy in tests and scripts
# ---------------------------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
