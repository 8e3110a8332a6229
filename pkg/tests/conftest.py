# tests/conftest.py
import networkx as nx
import numpy as np
import pytest

from graphnet.laplacian import GraphLaplacian, laplacian_from_edges
from models.enzyme import EnzymeParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


@pytest.fixture
def enzyme_params():
    # δ = k₁ = k₂ = 1, S_Y = 2
    return EnzymeParams(z=1.0, delta=1.0, k1=1.0, k2=1.0, s_y=2.0)


@pytest.fixture
def random_laplacian():
    """Фабрика: связный граф с единичными весами на n вершинах."""

    def build(rng: np.random.Generator, n: int) -> GraphLaplacian:
        while True:
            graph = nx.gnp_random_graph(n, 0.5, seed=int(rng.integers(2**31)))
            if nx.is_connected(graph):
                break
        edges = [(i, j, 1.0) for i, j in graph.edges]
        return laplacian_from_edges(n, edges, name=f"random-{n}")

    return build
