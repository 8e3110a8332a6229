# src/sim/sync.py
"""
Синхронизация ячеек сети: W(t) = ‖w(t)‖_p, где w: вектор попарных
расстояний ‖u_i − u_j‖_{p,Q}, ограничен огибающей e^{ct}W(0) с
c = sup μ_{p,Q}(J_F − λ₂D).

Гарантия доказана для N = 2 и N = 3; для больших сетей прогон идёт
без гарантии.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from graphnet.laplacian import GraphLaplacian, lambda2
from graphnet.network import DiffusionMatrix, assemble_network
from linalg.norms import WeightedNorm, p_norm, weighted_p_norm
from lognorm.lipschitz import GridSpec, lipschitz_constant
from models.vector_field import VectorField
from sim.contraction import check_envelope
from sim.integrator import integrate
from utils.config import DEFAULT_SEED, DEFAULT_TOLERANCE
from utils.errors import InvalidNormError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

GUARANTEED_SIZES = (2, 3)


@dataclass
class SyncReport:
    topology: str
    lambda_: float
    rate_c: float
    norm: WeightedNorm
    times: np.ndarray
    pairwise: np.ndarray
    w_series: np.ndarray
    envelope: np.ndarray
    tolerance: float
    bound_ok: bool
    worst_ratio: float
    worst_time: float
    guarantee: bool

    def to_frame(self) -> pd.DataFrame:
        margin = np.diff(self.w_series) / np.diff(self.times) - self.rate_c * self.w_series[:-1]
        return pd.DataFrame({
            "t": self.times,
            "W": self.w_series,
            "envelope": self.envelope,
            "margin": np.append(margin, np.nan),
        })

    def to_dict(self) -> dict:
        return {
            "topology": self.topology,
            "lambda": self.lambda_,
            "rate_c": self.rate_c,
            "norm": self.norm.to_dict(),
            "tolerance": self.tolerance,
            "bound_ok": self.bound_ok,
            "worst_ratio": self.worst_ratio,
            "worst_time": self.worst_time,
            "guarantee": self.guarantee,
            "initial_W": float(self.w_series[0]),
            "final_W": float(self.w_series[-1]),
            "steps": int(self.times.size - 1),
        }


def pairwise_distances(cells: ArrayLike, w: WeightedNorm) -> np.ndarray:
    """(‖u₁−u₂‖, ‖u₁−u₃‖, …, ‖u_{N−1}−u_N‖) в норме w, пары в порядке (i, j), i < j."""
    arr = np.asarray(cells, dtype=np.float64)
    return np.array([weighted_p_norm(arr[i] - arr[j], w) for i, j in combinations(range(arr.shape[0]), 2)])


def sync_rate(f: VectorField, topology: GraphLaplacian, d: DiffusionMatrix, w: WeightedNorm,
              grid: Optional[GridSpec] = None, *, seed: int = DEFAULT_SEED) -> tuple[float, float]:
    """(λ₂, sup μ_{p,Q}(J_F − λ₂D))."""
    lam = lambda2(topology)
    estimate = lipschitz_constant(f.shifted(lam * d.values), w, grid, seed=seed)
    return lam, estimate.value


def verify_sync(f: VectorField, topology: GraphLaplacian, d: DiffusionMatrix, w: WeightedNorm,
                u0: ArrayLike, t_end: float, dt: float,
                tolerance: float = DEFAULT_TOLERANCE, *,
                grid: Optional[GridSpec] = None, rate_c: Optional[float] = None,
                seed: int = DEFAULT_SEED) -> SyncReport:
    """
    Интегрирует сеть и сравнивает W(t) с огибающей e^{ct}W(0).

    Args:
        u0: состояние сети (u₁, …, u_N) длины N·n
        rate_c: если задан, используется вместо вычисленного c

    Raises:
        InvalidNormError: p = 1 или p = ∞ (вывод оценки требует 1 < p < ∞)
    """
    if not (1.0 < w.p < math.inf):
        raise InvalidNormError(
            f"p: оценка синхронизации выводится только при 1 < p < ∞, получено {w.p}"
        )
    lam, computed_c = sync_rate(f, topology, d, w, grid, seed=seed)
    c = computed_c if rate_c is None else float(rate_c)
    guarantee = topology.n_nodes in GUARANTEED_SIZES
    if not guarantee:
        logger.warning(f"⚠️ N = {topology.n_nodes}: оценка доказана только для N ∈ {GUARANTEED_SIZES}, прогон без гарантии")

    system = assemble_network(f, topology, d)
    trajectory = integrate(system, u0, t_end, dt)
    pairwise = np.stack([pairwise_distances(system.cells(state), w) for state in trajectory.states])
    w_series = np.array([p_norm(row, w.p) for row in pairwise])
    check = check_envelope(trajectory.times, w_series, c, tolerance)
    if not check.bound_ok:
        logger.warning(f"⚠️ {topology.name}: W(t) вышла за огибающую, отношение {check.worst_ratio:.6g}")
    return SyncReport(topology.name, lam, c, w, trajectory.times, pairwise, w_series, check.envelope,
                      tolerance, check.bound_ok, check.worst_ratio, check.worst_time, guarantee)
