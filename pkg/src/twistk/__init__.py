"""Exact computations for twisted K-theory via K_*(CP^inf)-module presentations."""

from .cpring import BetaPoly, TruncRing, multiply, n_series, truncate_ring
from .groups import AbelianGroup, GradedGroup
from .kk import KKElement, decompose, membership
from .laurent import LaurentPoly, TruncSeries
from .parsing import ParseError, parse_beta, parse_expr
from .tor import tor, tor_graded
from .twist import Presentation, parse_presentation, twisted_k

__all__ = [
    "AbelianGroup", "BetaPoly", "GradedGroup", "KKElement", "LaurentPoly",
    "ParseError", "Presentation", "TruncRing", "TruncSeries", "decompose",
    "membership", "multiply", "n_series", "parse_beta", "parse_expr",
    "parse_presentation", "tor", "tor_graded", "truncate_ring", "twisted_k",
]
