# src/graphnet/pde.py
"""
Полудискретизация уравнения реакции-диффузии u_t = F(u) + DΔu на
отрезке с условием Неймана.

Дискретный лапласиан: лапласиан пути на m ячейках с весами 1/h², так
что дискретная задача в точности является диффузионной сетью.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from graphnet.laplacian import laplacian_from_edges
from graphnet.network import DiffusionMatrix, NetworkSystem
from models.vector_field import VectorField
from utils.config import DEFAULT_DT_SAFETY
from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpatialGrid:
    """Отрезок длины length, разбитый на m равных ячеек."""
    length: float
    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise InvalidParameterError(f"grid.cells: нужно m ≥ 2 ячеек, получено {self.m}")
        if not (math.isfinite(self.length) and self.length > 0):
            raise InvalidParameterError(f"grid.length: длина должна быть > 0, получено {self.length}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "length", float(self.length))

    @property
    def h(self) -> float:
        return self.length / self.m

    @property
    def centers(self) -> np.ndarray:
        return (np.arange(self.m) + 0.5) * self.h

    def to_dict(self) -> dict:
        return {"length": self.length, "cells": self.m, "h": self.h}


def discretize_pde(f: VectorField, d: DiffusionMatrix, grid: SpatialGrid) -> NetworkSystem:
    """Сеть на пути из m ячеек с весом рёбер 1/h²."""
    weight = 1.0 / grid.h ** 2
    edges = [(k, k + 1, weight) for k in range(grid.m - 1)]
    laplacian = laplacian_from_edges(grid.m, edges, name=f"neumann-{grid.m}")
    system = NetworkSystem(f, laplacian, d, grid)
    logger.debug(f"PDE {f.name}: m={grid.m}, h={grid.h:g}, шаг ≤ {system.max_dt:.3e}")
    return system


def explicit_step_limit(grid: SpatialGrid, d: DiffusionMatrix,
                        safety: float = DEFAULT_DT_SAFETY) -> float:
    """safety·h²/(2·max d_i)."""
    return safety * grid.h ** 2 / (2.0 * max(d.d))
