# src/graphnet/network.py
"""
Диффузионная сеть u̇ = F̃(u) − (L⊗D)u: N одинаковых ячеек с полем F,
обменивающихся веществами по рёбрам графа со скоростями D.

Состояние сети: плоский вектор (u₁, …, u_N) длины N·n.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy.linalg import block_diag

from graphnet.laplacian import GraphLaplacian
from linalg.dense import DenseMatrix, kronecker, require_dim, spectral_abscissa
from linalg.norms import WeightedNorm, grid_weighted_norm, weighted_p_norm
from models.vector_field import BoxDomain, VectorField
from utils.config import DEFAULT_DT, DEFAULT_DT_SAFETY
from utils.errors import InvalidParameterError

if TYPE_CHECKING:
    from graphnet.pde import SpatialGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiffusionMatrix:
    """D = diag(d₁, …, dₙ), все d_i > 0."""
    d: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in np.atleast_1d(self.d))
        if not values:
            raise InvalidParameterError("diffusion: пустой список коэффициентов")
        for i, v in enumerate(values):
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"diffusion[{i}]: коэффициент должен быть > 0, получено {v}")
        object.__setattr__(self, "d", values)

    @classmethod
    def uniform(cls, value: float, dim: int) -> "DiffusionMatrix":
        return cls((value,) * dim)

    @property
    def dim(self) -> int:
        return len(self.d)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.d)

    @property
    def matrix(self) -> DenseMatrix:
        return np.diag(self.values)


@dataclass(eq=False)
class NetworkSystem:
    """
    Сеть ячеек. coupling = −(L⊗D), симметрична, coupling·𝟏 = 0.

    Если задана grid, сеть: полудискретизация PDE, и расстояния
    меряются сеточной нормой с весом ячейки h.
    """
    cell_field: VectorField
    laplacian: GraphLaplacian
    diffusion: DiffusionMatrix
    grid: Optional["SpatialGrid"] = None
    coupling: DenseMatrix = field(init=False)

    def __post_init__(self):
        require_dim(self.diffusion.dim, self.cell_field.dim, "diffusion")
        self.coupling = -kronecker(self.laplacian.matrix, self.diffusion.matrix)

    @property
    def name(self) -> str:
        kind = "pde" if self.grid is not None else "network"
        return f"{kind}:{self.cell_field.name}/{self.laplacian.name}"

    @property
    def n_cells(self) -> int:
        return self.laplacian.n_nodes

    @property
    def cell_dim(self) -> int:
        return self.cell_field.dim

    @property
    def dim(self) -> int:
        return self.n_cells * self.cell_dim

    @property
    def domain(self) -> BoxDomain:
        return self.cell_field.domain.tiled(self.n_cells)

    @property
    def max_dt(self) -> Optional[float]:
        """Граница явной устойчивости для полудискретизации PDE."""
        if self.grid is None:
            return None
        from graphnet.pde import explicit_step_limit
        return explicit_step_limit(self.grid, self.diffusion)

    def default_dt(self) -> float:
        """
        Шаг, когда он не задан: для PDE max_dt, для сети
        min(DEFAULT_DT, safety·2/(λ_max(L)·max d_i)).
        """
        if self.grid is not None:
            return self.max_dt
        stiffness = float(self.laplacian.eigenvalues()[-1]) * max(self.diffusion.d)
        if stiffness <= 0:
            return DEFAULT_DT
        return min(DEFAULT_DT, DEFAULT_DT_SAFETY * 2.0 / stiffness)

    def cells(self, u: ArrayLike) -> np.ndarray:
        """(..., N·n) → (..., N, n)."""
        arr = np.asarray(u, dtype=np.float64)
        return arr.reshape(arr.shape[:-1] + (self.n_cells, self.cell_dim))

    def uniform_state(self, x: ArrayLike) -> np.ndarray:
        return np.tile(np.asarray(x, dtype=np.float64), self.n_cells)

    def eval(self, u: ArrayLike, t: float = 0.0) -> np.ndarray:
        arr = np.asarray(u, dtype=np.float64)
        reaction = self.cell_field.eval(self.cells(arr), t).reshape(arr.shape)
        return reaction + arr @ self.coupling

    def jacobian(self, u: ArrayLike, t: float = 0.0) -> DenseMatrix:
        blocks = self.cell_field.jacobian(self.cells(u), t)
        return block_diag(*blocks) + self.coupling

    def distance(self, diff: ArrayLike, w: WeightedNorm) -> float:
        """‖(I_N⊗Q)Δ‖_p; для PDE: сеточная норма (Σ_k h Σ_i q_iᵖ|Δ_i(ω_k)|ᵖ)^{1/p}."""
        arr = np.asarray(diff, dtype=np.float64)
        if self.grid is not None:
            return grid_weighted_norm(self.cells(arr), w, self.grid.h)
        return weighted_p_norm(arr, w.tiled(self.n_cells))


def assemble_network(f: VectorField, l: GraphLaplacian, d: DiffusionMatrix) -> NetworkSystem:
    """u ↦ (F(u₁), …, F(u_N)) − (L⊗D)u."""
    system = NetworkSystem(f, l, d)
    logger.debug(f"Сеть {system.name}: {system.n_cells} ячеек × {system.cell_dim}")
    return system


def mode_growth_rates(f: VectorField, x_star: ArrayLike, l: GraphLaplacian,
                      d: DiffusionMatrix) -> list[tuple[float, float]]:
    """
    Линеаризация около однородного равновесия: для каждого собственного
    значения λ_k лапласиана: спектральная абсцисса J_F(x*) − λ_k D.

    Положительное значение при устойчивой моде λ = 0: неустойчивость
    Тьюринга; сжимающее поле её исключает.
    """
    require_dim(d.dim, f.dim, "diffusion")
    jac = f.jacobian(np.asarray(x_star, dtype=np.float64))
    return [(float(lam), spectral_abscissa(jac - lam * d.matrix)) for lam in l.eigenvalues()]
