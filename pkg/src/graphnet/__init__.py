"""
Лапласианы графов, диффузионные сети и полудискретизация PDE.
"""

from graphnet.laplacian import (
    GraphLaplacian,
    lambda2,
    laplacian_from_edges,
    named_laplacian,
    parse_graph,
)
from graphnet.network import DiffusionMatrix, NetworkSystem, assemble_network, mode_growth_rates
from graphnet.pde import SpatialGrid, discretize_pde, explicit_step_limit

__all__ = [
    "DiffusionMatrix", "GraphLaplacian", "NetworkSystem", "SpatialGrid",
    "assemble_network", "discretize_pde", "explicit_step_limit", "lambda2",
    "laplacian_from_edges", "mode_growth_rates", "named_laplacian", "parse_graph",
]
