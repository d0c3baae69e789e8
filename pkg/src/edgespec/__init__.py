"""Spectral invariant of graphs from the (n-2,2) representation of S_n.

The operator X_G (sum of the transpositions of the edges of G) acts on the
pair space V_n; its restriction to the zero-degree subspace W_n carries the
(n-2,2) irreducible.  This package computes that restriction exactly
(characteristic polynomials, trace moments) and numerically (eigenvalues).
"""

from .graph_core import Graph, graph6_decode, graph6_encode, is_isomorphic
from .edge_operator import charpoly_22, spectrum_22
from .moments import moment_exact, moment_oracle
from .polynomial import IntPolynomial

__all__ = [
    "Graph", "IntPolynomial", "charpoly_22", "graph6_decode", "graph6_encode",
    "is_isomorphic", "moment_exact", "moment_oracle", "spectrum_22",
]
__version__ = "0.1.0"
