# src/lognorm/lipschitz.py
"""
Логарифмическая константа Липшица M_{p,Q}[F] как супремум μ_{p,Q}(J_F)
по сетке на выпуклой области-параллелепипеде.

На выпуклой области sup_x μ(J_F(x)) = M[F] для непрерывно
дифференцируемого F, поэтому сеточный максимум: оценка снизу, точная
в пределе измельчения. Неограниченные рёбра области отсекаются на cap.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from linalg.norms import WeightedNorm
from lognorm.measures import mu_closed_form_batch, mu_weighted, weighted_similarity
from models.vector_field import BoxDomain, VectorField
from utils.config import DEFAULT_GRID_POINTS, DEFAULT_SEED
from utils.errors import InputError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

# для 1 < p < ∞ на сетке используется функционал полускалярного
# произведения: он дешевле h-трассы и даёт ту же нижнюю оценку
GRID_ESTIMATOR = "semi_inner"


@dataclass(frozen=True)
class GridSpec:
    """
    Описание сетки: points_per_axis точек на каждую ось (включая концы),
    cap для неограниченных рёбер, bounds: явная подобласть, при
    зависимости поля от времени: time_points точек на time_range.
    """
    points_per_axis: int = DEFAULT_GRID_POINTS
    cap: Optional[float] = None
    bounds: Optional[tuple[tuple[float, float], ...]] = None
    time_range: tuple[float, float] = (0.0, 0.0)
    time_points: int = 1

    def __post_init__(self):
        if self.points_per_axis < 1:
            raise InputError(f"grid.points_per_axis: сетка пуста ({self.points_per_axis} точек)")
        if self.time_points < 1:
            raise InputError(f"grid.time_points: сетка пуста ({self.time_points} точек)")
        if self.cap is not None and not (math.isfinite(self.cap) and self.cap > 0):
            raise InputError(f"grid.cap: ожидалось конечное положительное число, получено {self.cap}")
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple((float(lo), float(hi)) for lo, hi in self.bounds))

    def box(self, domain: BoxDomain, default_cap: Optional[float] = None) -> BoxDomain:
        if self.bounds is not None:
            box = BoxDomain(tuple(lo for lo, _ in self.bounds), tuple(hi for _, hi in self.bounds))
            if box.dim != domain.dim:
                raise InputError(f"grid.bounds: {box.dim} осей, у области {domain.dim}")
            return box
        return domain.truncated(self.cap if self.cap is not None else default_cap)

    def axes(self, domain: BoxDomain, default_cap: Optional[float] = None) -> list[np.ndarray]:
        box = self.box(domain, default_cap)
        if not box.is_bounded:
            raise InputError("grid.bounds: область сетки должна быть ограничена")
        return [np.linspace(lo, hi, self.points_per_axis) for lo, hi in zip(box.lower, box.upper)]

    def times(self) -> np.ndarray:
        t0, t1 = self.time_range
        return np.linspace(t0, t1, self.time_points)

    def to_dict(self) -> dict:
        return {
            "points_per_axis": self.points_per_axis,
            "cap": self.cap,
            "bounds": [list(pair) for pair in self.bounds] if self.bounds else None,
            "time_range": list(self.time_range),
            "time_points": self.time_points,
        }


@dataclass(frozen=True)
class LipschitzEstimate:
    value: float
    argmax_point: np.ndarray = field(compare=False)
    argmax_time: float
    grid_spec: GridSpec
    n_points: int
    norm: WeightedNorm

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argmax_point": self.argmax_point.tolist(),
            "argmax_time": self.argmax_time,
            "grid": self.grid_spec.to_dict(),
            "n_points": self.n_points,
            "norm": self.norm.to_dict(),
        }


def grid_points(f: VectorField, grid: GridSpec) -> np.ndarray:
    """Точки сетки в лексикографическом порядке (первая ось: старшая)."""
    axes = grid.axes(f.domain, f.default_cap)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _measures_at(f: VectorField, w: WeightedNorm, points: np.ndarray, t: float,
                 seed: int) -> np.ndarray:
    jacobians = f.jacobian(points, t)
    if w.is_closed_form:
        return mu_closed_form_batch(weighted_similarity(jacobians, w.weights), w.p)
    return np.array([
        mu_weighted(jac, w, method=GRID_ESTIMATOR, seed=seed).value for jac in jacobians
    ])


def lipschitz_constant(f: VectorField, w: WeightedNorm, grid: Optional[GridSpec] = None, *,
                       seed: int = DEFAULT_SEED) -> LipschitzEstimate:
    """
    sup μ_{p,Q}(J_F(x, t)) по узлам сетки.

    Args:
        f: поле с областью-параллелепипедом
        w: норма (p, Q)
        grid: описание сетки; по умолчанию 33 точки на ось
        seed: зерно оценщика при 1 < p < ∞

    Returns:
        LipschitzEstimate; при равных значениях argmax: первая точка
        в лексикографическом порядке (x, затем t)
    """
    grid = grid or GridSpec()
    if w.dim != f.dim:
        raise InputError(f"w: размерность нормы {w.dim}, у поля {f.dim}")
    points = grid_points(f, grid)
    times = grid.times() if f.time_dependent else np.array([grid.time_range[0]])

    values = np.stack([_measures_at(f, w, points, float(t), seed) for t in times], axis=1)
    flat = values.ravel()
    if flat.size == 0:
        raise InputError("grid: пустая сетка")
    idx = int(np.argmax(flat))
    point_idx, time_idx = divmod(idx, len(times))
    value = float(flat[idx])
    logger.debug(
        f"M_{{{w.p:g},Q}}[{f.name}] ≥ {value:.12g} на {flat.size} узлах, argmax {points[point_idx].tolist()}"
    )
    return LipschitzEstimate(value, points[point_idx].copy(), float(times[time_idx]),
                             grid, int(flat.size), w)


def lipschitz_over(f: VectorField, weights: Sequence[WeightedNorm], grid: Optional[GridSpec] = None, *,
                   seed: int = DEFAULT_SEED) -> list[LipschitzEstimate]:
    """Одна сетка, несколько норм: якобианы считаются один раз."""
    grid = grid or GridSpec()
    points = grid_points(f, grid)
    times = grid.times() if f.time_dependent else np.array([grid.time_range[0]])
    jacobians = [f.jacobian(points, float(t)) for t in times]
    results = []
    for w in weights:
        if not w.is_closed_form:
            results.append(lipschitz_constant(f, w, grid, seed=seed))
            continue
        values = np.stack([
            mu_closed_form_batch(weighted_similarity(jac, w.weights), w.p) for jac in jacobians
        ], axis=1).ravel()
        idx = int(np.argmax(values))
        point_idx, time_idx = divmod(idx, len(times))
        results.append(LipschitzEstimate(float(values[idx]), points[point_idx].copy(),
                                         float(times[time_idx]), grid, int(values.size), w))
    return results
