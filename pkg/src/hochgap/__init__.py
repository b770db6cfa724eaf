"""Exact computational commutative algebra: free resolutions, Hochschild
(co)homology and gap criteria for smoothness."""

from hochgap.coeffs import CoeffRing, QQ, ZZ, GF
from hochgap.poly import PolyRing, Poly
from hochgap.presentation import AlgebraPresentation, parse_presentation, load_presentation

__all__ = [
    "CoeffRing", "QQ", "ZZ", "GF",
    "PolyRing", "Poly",
    "AlgebraPresentation", "parse_presentation", "load_presentation",
]

__version__ = "0.1.0"
