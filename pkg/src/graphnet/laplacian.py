# src/graphnet/laplacian.py
"""
Лапласианы графов.

Соглашение о знаке одно на весь проект: L: неотрицательно определённая
матрица (нулевые суммы строк, внедиагональные элементы ≤ 0), связь
всегда входит как −(L⊗D).
"""

import logging
import re
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Union

import networkx as nx
import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import DenseMatrix, as_square, symmetric_eigenvalues
from utils.errors import DisconnectedGraphError, InvalidLaplacianError, NotSymmetricError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

LAPLACIAN_TOL = 1e-12
CONNECTIVITY_TOL = 1e-10

_NAMED_GRAPHS = {
    "path": (nx.path_graph, 2),
    "complete": (nx.complete_graph, 2),
    "cycle": (nx.cycle_graph, 3),
    "star": (lambda n: nx.star_graph(n - 1), 2),
}
_NAME_PATTERN = re.compile(r"^(?P<kind>[a-z]+)-(?P<n>\d+)$")

Edge = tuple[int, int, float]


@dataclass(frozen=True, eq=False)
class GraphLaplacian:
    """Симметричный PSD лапласиан на n_nodes вершинах."""
    matrix: DenseMatrix
    name: str = "graph"

    def __post_init__(self):
        mat = as_square(self.matrix, "laplacian")
        scale = max(1.0, float(np.max(np.abs(mat))))
        tol = LAPLACIAN_TOL * scale
        if mat.shape[0] < 2:
            raise InvalidLaplacianError(f"laplacian: нужно не меньше 2 вершин, получено {mat.shape[0]}")
        if np.max(np.abs(mat - mat.T)) > tol:
            raise InvalidLaplacianError("laplacian: матрица не симметрична")
        if np.max(np.abs(mat.sum(axis=1))) > tol:
            raise InvalidLaplacianError("laplacian: суммы строк не равны нулю (L·𝟏 ≠ 0)")
        off = mat - np.diag(np.diag(mat))
        if np.max(off) > 0:
            raise InvalidLaplacianError("laplacian: внедиагональные элементы должны быть ≤ 0 (соглашение PSD)")
        try:
            eigenvalues = symmetric_eigenvalues(mat)
        except NotSymmetricError as e:
            raise InvalidLaplacianError(f"laplacian: {e}") from e
        if eigenvalues[0] < -tol:
            raise InvalidLaplacianError(f"laplacian: отрицательное собственное значение {eigenvalues[0]:.3e}")
        object.__setattr__(self, "matrix", mat)

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return symmetric_eigenvalues(self.matrix)

    def to_dict(self) -> dict:
        return {"name": self.name, "n_nodes": self.n_nodes, "matrix": self.matrix.tolist()}


def _graph_laplacian(graph: nx.Graph, name: str) -> GraphLaplacian:
    nodes = sorted(graph.nodes)
    matrix = nx.laplacian_matrix(graph, nodelist=nodes, weight="weight").toarray().astype(np.float64)
    return GraphLaplacian(matrix, name)


def laplacian_from_edges(n_nodes: int, edges: Iterable[Union[Edge, ArrayLike]],
                         name: str = "edges") -> GraphLaplacian:
    """
    Взвешенный лапласиан по списку рёбер (i, j, weight).

    Raises:
        InvalidLaplacianError: меньше двух вершин, петля, вес ≤ 0,
            повторное ребро, номер вершины вне диапазона
    """
    if int(n_nodes) != n_nodes or n_nodes < 2:
        raise InvalidLaplacianError(f"graph.n_nodes: нужно целое ≥ 2, получено {n_nodes}")
    n_nodes = int(n_nodes)
    graph = nx.Graph()
    graph.add_nodes_from(range(n_nodes))
    for k, edge in enumerate(edges):
        if len(edge) != 3:
            raise InvalidLaplacianError(f"graph.edges[{k}]: ожидалась тройка (i, j, weight)")
        i, j, weight = edge
        if int(i) != i or int(j) != j or not (0 <= i < n_nodes and 0 <= j < n_nodes):
            raise InvalidLaplacianError(f"graph.edges[{k}]: вершины ({i}, {j}) вне диапазона 0…{n_nodes - 1}")
        i, j, weight = int(i), int(j), float(weight)
        if i == j:
            raise InvalidLaplacianError(f"graph.edges[{k}]: петля в вершине {i}")
        if not (np.isfinite(weight) and weight > 0):
            raise InvalidLaplacianError(f"graph.edges[{k}]: вес должен быть > 0, получено {weight}")
        if graph.has_edge(i, j):
            raise InvalidLaplacianError(f"graph.edges[{k}]: ребро ({i}, {j}) задано повторно")
        graph.add_edge(i, j, weight=weight)
    return _graph_laplacian(graph, name)


def named_laplacian(spec: str) -> GraphLaplacian:
    """Лапласиан графа по имени вида path-N, complete-N, cycle-N, star-N."""
    match = _NAME_PATTERN.match(spec.strip().lower())
    if match is None or match["kind"] not in _NAMED_GRAPHS:
        raise InvalidLaplacianError(
            f"graph: неизвестный граф {spec!r}; ожидалось одно из {sorted(_NAMED_GRAPHS)} в виде <тип>-N"
        )
    builder, min_nodes = _NAMED_GRAPHS[match["kind"]]
    n = int(match["n"])
    if n < min_nodes:
        raise InvalidLaplacianError(f"graph: для {match['kind']} нужно N ≥ {min_nodes}, получено {n}")
    return _graph_laplacian(builder(n), f"{match['kind']}-{n}")


def parse_graph(spec: Union[str, Mapping[str, Any], GraphLaplacian]) -> GraphLaplacian:
    """Граф из конфига: имя, либо {"n_nodes": N, "edges": [[i, j, w], ...]}."""
    if isinstance(spec, GraphLaplacian):
        return spec
    if isinstance(spec, str):
        return named_laplacian(spec)
    if "n_nodes" not in spec or "edges" not in spec:
        raise InvalidLaplacianError("graph: нужны поля n_nodes и edges")
    return laplacian_from_edges(spec["n_nodes"], spec["edges"], spec.get("name", "edges"))


def lambda2(l: GraphLaplacian) -> float:
    """
    Второе по величине снизу собственное значение L (алгебраическая связность).

    Raises:
        DisconnectedGraphError: граф несвязен; в ошибке: кратность нуля
    """
    eigenvalues = l.eigenvalues()
    zero_multiplicity = int(np.sum(eigenvalues <= CONNECTIVITY_TOL))
    if zero_multiplicity > 1:
        raise DisconnectedGraphError(
            f"graph: граф несвязен, собственное значение 0 кратности {zero_multiplicity}",
            zero_multiplicity,
        )
    return float(eigenvalues[1])
