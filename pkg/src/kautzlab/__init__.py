"""Kautz, subKautz and cyclic Kautz digraphs: construction, label routing,
and a harness that checks closed-form structure against brute force."""
from .digraph import Digraph, NotStronglyConnected
from .families import build, line_digraph, order_formula, partial_line_digraph
from .routing import Case, Route, Unreachable, distance_analytic, route, shortest_path
from .words import Family, FamilySpec, InvalidInput, Word, enumerate_vertices, format_word, is_valid_vertex, parse_word

__all__ = [
    "Case", "Digraph", "Family", "FamilySpec", "InvalidInput", "NotStronglyConnected", "Route",
    "Unreachable", "Word", "build", "distance_analytic", "enumerate_vertices", "format_word",
    "is_valid_vertex", "line_digraph", "order_formula", "parse_word", "partial_line_digraph",
    "route", "shortest_path",
]
__version__ = "0.1.0"
