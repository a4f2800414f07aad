"""Games on colored graphs solved through completely well-monotonic graphs."""
from .graphs import Arena, ColoredGraph, Lasso, parse_arena, serialize_arena
from .monotone import MonotoneGraph, build, check_axioms, edges_from_table, level_value
from .oracle import OracleBudget, brute_force_solve, eval_lasso, find_min_morphism, graph_value, universality_check
from .solver import least_progress_measure, solve
from .structuration import structurate
from .valuations import INF, LOSE, WIN, ValuationSpec, parse_spec

__all__ = [
    "Arena", "ColoredGraph", "Lasso", "parse_arena", "serialize_arena",
    "MonotoneGraph", "build", "check_axioms", "edges_from_table", "level_value",
    "OracleBudget", "brute_force_solve", "eval_lasso", "find_min_morphism", "graph_value", "universality_check",
    "least_progress_measure", "solve", "structurate",
    "INF", "LOSE", "WIN", "ValuationSpec", "parse_spec",
]
