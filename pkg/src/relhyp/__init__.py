"""Computational toolkit for relatively hyperbolic groups and their Dehn fillings.

Combinatorial horoballs, cusped spaces, Mineyev's homological bicombing,
preferred paths with their skeletons, and desk-scale filling experiments.
"""
from .errors import RelHypError
from .graph import Graph, cycle_graph, grid_graph, path_graph, parse_base
from .horoball import HoroballGraph, build_horoball, horoball_distance, horoball_fill, horoball_geodesic
from .metric import Constants, delta_thin, hausdorff_distance
from .rewriting import cayley_ball, make_oracle
from .words import free_product_presentation, load_presentation, parse_presentation, triangle_presentation

__version__ = "0.1.0"
