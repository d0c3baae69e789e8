"""The operator X_G = sum over edges of the transposition (ij), acting on the
pair space V_n and on its zero-degree subspace W_n."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .graph_core import Graph
from .polynomial import IntMatrix, IntPolynomial, charpoly_exact
from .sym_group import RepresentationAbsentError, dim_22


class NumericError(RuntimeError):
    pass


@dataclass(frozen=True)
class PairIndex:
    """Colex numbering of the 2-subsets of {0..n-1}: (0,1), (0,2), (1,2), (0,3), ..."""

    n: int

    @property
    def size(self) -> int:
        return comb(self.n, 2)

    def index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if not 0 <= i < j < self.n:
            raise ValueError(f"invalid pair ({i}, {j}) for n={self.n}")
        return j * (j - 1) // 2 + i

    def pair(self, k: int) -> tuple[int, int]:
        j = 1
        while (j + 1) * j // 2 <= k:
            j += 1
        return k - j * (j - 1) // 2, j

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in range(j)]


def build_full_operator(g: Graph) -> IntMatrix:
    """Matrix of X_G on the pair basis e_ab (symmetric, integer)."""
    if g.n < 2:
        raise ValueError("the pair space needs n >= 2")
    idx = PairIndex(g.n)
    deg, m = g.degrees, g.m
    size = idx.size
    mat = [[0] * size for _ in range(size)]
    for col, (a, b) in enumerate(idx.pairs()):
        mat[col][col] = m - deg[a] - deg[b] + 2 * g.has_edge(a, b)
        # an edge ac (c != b) moves e_ab to e_bc; an edge bc (c != a) moves it to e_ac
        for c in g.neighbors(a):
            if c != b:
                mat[idx.index(b, c)][col] += 1
        for c in g.neighbors(b):
            if c != a:
                mat[idx.index(a, c)][col] += 1
    return mat


def build_vertex_operator(g: Graph) -> IntMatrix:
    """X_G on the permutation module C^n, i.e. mI - L_G."""
    mat = [[(g.adj[i] >> j) & 1 for j in range(g.n)] for i in range(g.n)]
    for v, d in enumerate(g.degrees):
        mat[v][v] = g.m - d
    return mat


def permutation_sum_operator(g: Graph) -> np.ndarray:
    """Reference construction: sum of the pair-permutation matrices of each edge."""
    idx = PairIndex(g.n)
    size = idx.size
    out = np.zeros((size, size), dtype=np.int64)
    for u, v in g.edge_list:
        swap = {u: v, v: u}
        for col, (a, b) in enumerate(idx.pairs()):
            out[idx.index(swap.get(a, a), swap.get(b, b)), col] += 1
    return out


def star_vectors(n: int) -> np.ndarray:
    """Columns E_i = sum of the pairs containing vertex i."""
    idx = PairIndex(n)
    stars = np.zeros((idx.size, n))
    for k, (i, j) in enumerate(idx.pairs()):
        stars[k, i] = stars[k, j] = 1.0
    return stars


def w_projector(n: int) -> np.ndarray:
    """Orthogonal projector of V_n onto the orthogonal complement of the star span."""
    if n <= 3:
        raise RepresentationAbsentError(f"W_n is zero for n={n}")
    s = star_vectors(n)
    # Gram matrix S^T S = (n-2) I + J has an explicit inverse
    gram_inv = (np.eye(n) - np.ones((n, n)) / (2 * n - 2)) / (n - 2)
    return np.eye(s.shape[0]) - s @ gram_inv @ s.T


def w_basis(n: int, drop_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of W_n (as columns) by modified Gram-Schmidt on the
    projector's columns."""
    proj = w_projector(n)
    expected = dim_22(n)
    basis: list[np.ndarray] = []
    for col in proj.T:
        v = col.copy()
        for b in basis:
            v -= (b @ v) * b
        norm = np.linalg.norm(v)
        if norm >= drop_tol:
            basis.append(v / norm)
    if len(basis) != expected:
        raise NumericError(f"W_{n} basis has {len(basis)} vectors, expected {expected}")
    return np.column_stack(basis)


def restricted_operator(g: Graph) -> np.ndarray:
    if g.n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={g.n}")
    basis = w_basis(g.n)
    x = np.array(build_full_operator(g), dtype=float)
    return basis.T @ x @ basis


def invariance_residual(g: Graph) -> float:
    """||(I - P) X P|| relative to ||X||."""
    p = w_projector(g.n)
    x = np.array(build_full_operator(g), dtype=float)
    scale = max(np.linalg.norm(x), 1.0)
    return float(np.linalg.norm((np.eye(len(p)) - p) @ x @ p) / scale)


@dataclass(frozen=True)
class Spectrum22:
    eigenvalues: tuple[float, ...]
    tolerance: float


def spectrum_22(g: Graph, tol: float = 1e-10) -> Spectrum22:
    a = restricted_operator(g)
    a = (a + a.T) / 2
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed on a {a.shape[0]}x{a.shape[0]} matrix: {exc}") from exc
    scale = max(np.linalg.norm(a, 2), 1.0)
    resid = np.linalg.norm(a @ vectors - vectors * values, axis=0)
    worst = int(np.argmax(resid)) if len(resid) else 0
    if len(resid) and resid[worst] > tol * scale:
        raise NumericError(
            f"eigenpair {worst} residual {resid[worst]:.3e} exceeds {tol:.1e} * ||A|| = {tol * scale:.3e}"
        )
    return Spectrum22(tuple(float(v) for v in np.sort(values)), tol)


def charpoly_full(g: Graph) -> IntPolynomial:
    return charpoly_exact(build_full_operator(g))


def charpoly_vertex(g: Graph) -> IntPolynomial:
    return charpoly_exact(build_vertex_operator(g))


def charpoly_22(g: Graph) -> IntPolynomial:
    """det(tI - X_G|W_n), obtained exactly as charpoly(V_n) / charpoly(C^n).

    V_n = C^n (+) W_n as modules, so the division is exact.
    """
    if g.n <= 3:
        raise RepresentationAbsentError(f"(n-2,2) is absent for n={g.n}")
    return charpoly_full(g) // charpoly_vertex(g)
