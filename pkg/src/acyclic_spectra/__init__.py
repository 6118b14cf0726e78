"""Exact eigenvalue multiplicity structure of symmetric matrices whose graph is a tree."""

from .exactpoly import Interval, Poly, parse_poly, poly_gcd, squarefree_decomposition
from .graphs import Graph, diameter, path_cover_number, whirl
from .polymatrix import PolyMatrix, SnfResult, characteristic_matrix, det, smith_normal_form
from .spectra import EigenStructure, RatSymMatrix, eigen_structure, minimal_polynomial, sample_S

__all__ = [
    "Interval",
    "Poly",
    "parse_poly",
    "poly_gcd",
    "squarefree_decomposition",
    "Graph",
    "diameter",
    "path_cover_number",
    "whirl",
    "PolyMatrix",
    "SnfResult",
    "characteristic_matrix",
    "det",
    "smith_normal_form",
    "EigenStructure",
    "RatSymMatrix",
    "eigen_structure",
    "minimal_polynomial",
    "sample_S",
]

__version__ = "0.1.0"
