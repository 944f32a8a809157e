"""Critical node cut toolkit: exact solvers, a counting DP, an approximation
scheme, and hardness-instance generators for the budgeted vertex-deletion
problem whose objective is the number of connected vertex pairs."""

from .graph import (
    Graph,
    Instance,
    ParameterReport,
    Solution,
    components,
    delete_vertices,
    expand_weights,
    induced_subgraph,
    make_solution,
    pairs,
    parameter_report,
)

__all__ = [
    "Graph",
    "Instance",
    "ParameterReport",
    "Solution",
    "components",
    "delete_vertices",
    "expand_weights",
    "induced_subgraph",
    "make_solution",
    "pairs",
    "parameter_report",
]

__version__ = "0.1.0"
