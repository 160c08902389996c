"""Exact growth series and distance invariants of periodic graphs.

The package computes, with proof-backed intermediate certificates, the
generating function of the vertex-growth sequence of a strongly connected
periodic graph of dimension at most 3, together with the quasi-polynomial
form of the sequence.  All of the computation path is exact (integers and
rationals); floating point never enters any certified quantity.
"""

from .exactalg import IntPoly, FactoredDenominator, Rat, rat
from .graph import PeriodicGraph, parse_graph, validate_graph
from .pipeline import Analysis, analyze_graph

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "FactoredDenominator",
    "Rat",
    "rat",
    "PeriodicGraph",
    "parse_graph",
    "validate_graph",
    "Analysis",
    "analyze_graph",
    "__version__",
]
