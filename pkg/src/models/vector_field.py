# src/models/vector_field.py
"""
Векторное поле реакций F: V → ℝⁿ с аналитическим якобианом на выпуклой
области-параллелепипеде V.

rhs и jac векторизованы: принимают массив формы (..., n) и возвращают
(..., n) и (..., n, n) соответственно. Это позволяет считать якобианы
сразу по всей сетке и по всем ячейкам сети.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import as_vector, require_dim
from linalg.norms import WeightedNorm, weighted_p_norm
from utils.config import DEFAULT_SEED
from utils.errors import InputError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

FD_STEP = 1e-6
JACOBIAN_RTOL = 1e-5
JACOBIAN_CHECK_POINTS = 1000
DOMAIN_TOL = 1e-9

Rhs = Callable[[np.ndarray, float], np.ndarray]
Jac = Callable[[np.ndarray, float], np.ndarray]


@dataclass(frozen=True)
class BoxDomain:
    """Параллелепипед Π[lower_i, upper_i]; границы могут быть ±∞."""
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != len(upper):
            raise InputError(f"domain: {len(lower)} нижних и {len(upper)} верхних границ")
        for i, (lo, hi) in enumerate(zip(lower, upper)):
            if math.isnan(lo) or math.isnan(hi) or not lo < hi:
                raise InputError(f"domain[{i}]: требуется lower < upper, получено [{lo}, {hi}]")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def unbounded(cls, dim: int) -> "BoxDomain":
        return cls((-math.inf,) * dim, (math.inf,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def is_bounded(self) -> bool:
        return all(map(math.isfinite, self.lower + self.upper))

    def contains(self, x: np.ndarray, tol: float = DOMAIN_TOL) -> bool:
        """Точка (или стек точек (..., n)) внутри области с допуском tol·(1+|границы|)."""
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        slack_lo = tol * (1.0 + np.where(np.isfinite(lo), np.abs(lo), 0.0))
        slack_hi = tol * (1.0 + np.where(np.isfinite(hi), np.abs(hi), 0.0))
        return bool(np.all(x >= lo - slack_lo) and np.all(x <= hi + slack_hi))

    def truncated(self, cap: Optional[float]) -> "BoxDomain":
        """Бесконечные границы заменяются на ±cap."""
        if self.is_bounded:
            return self
        if cap is None:
            raise InputError("cap: область неограничена, нужна отсечка cap")
        lower = tuple(-cap if math.isinf(v) else v for v in self.lower)
        upper = tuple(cap if math.isinf(v) else v for v in self.upper)
        return BoxDomain(lower, upper)

    def tiled(self, copies: int) -> "BoxDomain":
        return BoxDomain(self.lower * copies, self.upper * copies)

    def sample(self, rng: np.random.Generator, size: int = 1,
               cap: Optional[float] = None, margin: float = 0.0) -> np.ndarray:
        """Равномерные точки усечённой области, отступив margin от границ."""
        box = self.truncated(cap)
        lo = np.asarray(box.lower)
        hi = np.asarray(box.upper)
        pad = margin * (hi - lo)
        return rng.uniform(lo + pad, hi - pad, size=(size, self.dim))

    def to_dict(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper)}


@dataclass
class VectorField:
    """
    Поле реакций: значение, якобиан, область, опциональная зависимость от t.

    jacobian_source = "analytic" | "finite_difference"; сертификация
    отказывается работать с конечными разностями, если их согласие хуже 1e-7.
    """
    name: str
    dim: int
    rhs: Rhs
    domain: BoxDomain
    jac: Optional[Jac] = None
    time_dependent: bool = False
    params: dict = field(default_factory=dict)
    default_cap: Optional[float] = None

    def __post_init__(self):
        require_dim(self.domain.dim, self.dim, "domain")

    @property
    def jacobian_source(self) -> str:
        return "analytic" if self.jac is not None else "finite_difference"

    def eval(self, x: ArrayLike, t: float = 0.0) -> np.ndarray:
        return np.asarray(self.rhs(np.asarray(x, dtype=np.float64), t), dtype=np.float64)

    def jacobian(self, x: ArrayLike, t: float = 0.0) -> np.ndarray:
        arr = np.asarray(x, dtype=np.float64)
        if self.jac is not None:
            jac = np.asarray(self.jac(arr, t), dtype=np.float64)
            return np.broadcast_to(jac, arr.shape + (self.dim,)).copy() if jac.ndim == 2 and arr.ndim > 1 else jac
        if arr.ndim == 1:
            return finite_difference_jacobian(self, arr, t)
        flat = arr.reshape(-1, self.dim)
        stack = np.stack([finite_difference_jacobian(self, point, t) for point in flat])
        return stack.reshape(arr.shape + (self.dim,))

    def distance(self, diff: ArrayLike, w: WeightedNorm) -> float:
        return weighted_p_norm(diff, w)

    def shifted(self, shift: ArrayLike) -> "VectorField":
        """F(x) − s⊙x; якобиан J_F − diag(s). Для синхронизации: s = λ·d."""
        s = as_vector(shift, "shift")
        require_dim(s.size, self.dim, "shift")
        base_rhs, base_jac = self.rhs, self.jac

        def rhs(x, t):
            return base_rhs(x, t) - x * s

        jac = None
        if base_jac is not None:
            def jac(x, t):
                return base_jac(x, t) - np.diag(s)

        return VectorField(f"{self.name}-shifted", self.dim, rhs, self.domain, jac,
                           self.time_dependent, dict(self.params), self.default_cap)


def finite_difference_jacobian(field_: VectorField, x: np.ndarray, t: float = 0.0,
                               step: float = FD_STEP) -> np.ndarray:
    """Центральные разности с шагом step·max(1, |x_j|)."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    jac = np.empty((n, n))
    for j in range(n):
        dx = step * max(1.0, abs(x[j]))
        e = np.zeros(n)
        e[j] = dx
        jac[:, j] = (field_.eval(x + e, t) - field_.eval(x - e, t)) / (2.0 * dx)
    return jac


def check_jacobian(field_: VectorField, n_points: int = JACOBIAN_CHECK_POINTS, *,
                   seed: int = DEFAULT_SEED, cap: Optional[float] = None,
                   step: float = FD_STEP) -> float:
    """
    Наибольшее расхождение якобиана с центральными разностями в случайных
    внутренних точках, в единицах max(1, ‖J‖_max).

    Инвариант поля: результат ≤ JACOBIAN_RTOL.
    """
    rng = np.random.default_rng(seed)
    cap = cap if cap is not None else (field_.default_cap or 10.0)
    points = field_.domain.sample(rng, n_points, cap=cap, margin=0.01)
    times = rng.uniform(0.0, 10.0, n_points) if field_.time_dependent else np.zeros(n_points)
    worst = 0.0
    for point, t in zip(points, times):
        analytic = field_.jacobian(point, t)
        numeric = finite_difference_jacobian(field_, point, t, step)
        scale = max(1.0, float(np.max(np.abs(analytic))))
        worst = max(worst, float(np.max(np.abs(analytic - numeric))) / scale)
    return worst
