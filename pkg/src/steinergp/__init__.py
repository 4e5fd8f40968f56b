"""Exact Steiner general position invariants of small graphs."""

__version__ = "0.1.0"

from .graph import Graph, GraphError, clique_number, components, is_connected, vertex_connectivity
from .steiner import INF, SteinerTable, naive_steiner_distance, steiner_distance, steiner_table
from .search import (
    Budget,
    InvariantResult,
    enumerate_interval_sgp_sets,
    gp,
    is_k_sgp,
    sgp,
    sgp_interval,
    sjc,
    somega,
)
from .formulas import FormulaError, FormulaResult
from .families import make_family
from .harness import run_suite

__all__ = [
    "INF",
    "Budget",
    "FormulaError",
    "FormulaResult",
    "Graph",
    "GraphError",
    "InvariantResult",
    "SteinerTable",
    "clique_number",
    "components",
    "enumerate_interval_sgp_sets",
    "gp",
    "is_connected",
    "is_k_sgp",
    "make_family",
    "naive_steiner_distance",
    "run_suite",
    "sgp",
    "sgp_interval",
    "sjc",
    "somega",
    "steiner_distance",
    "steiner_table",
    "vertex_connectivity",
]
