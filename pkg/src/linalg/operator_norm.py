# src/linalg/operator_norm.py
"""
Индуцированные операторные нормы ‖A‖_p и общий механизм подъёма на
единичной p-сфере.

Для p ∈ {1, 2, ∞} норма точная (столбцовые/строчные суммы, старшее
сингулярное число). Для прочих p замкнутой формы нет: значение: нижняя
оценка мультистартовым градиентным подъёмом с делением шага пополам,
флаг exact=False.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import DenseMatrix, DenseVector, as_square, as_vector, symmetric_eigenvalues
from linalg.norms import p_norm, parse_p
from utils.config import DEFAULT_SEED, ESTIMATOR_REL_GAIN, ESTIMATOR_STARTS
from utils.errors import InvalidNormError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

MAX_ASCENT_ITER = 500
MIN_STEP = 1e-13
MIN_RANDOM_STARTS = 2
STALL_LIMIT = 3
GRADIENT_CLIP = 1e12


@dataclass(frozen=True)
class OperatorNorm:
    value: float
    p: float
    exact: bool
    argmax: Optional[DenseVector] = None


# ==================== ПОДЪЁМ НА p-СФЕРЕ ====================

def dual_vector(v: np.ndarray, p: float) -> np.ndarray:
    """Градиент ‖·‖_p в точке v ≠ 0: sign(v)|v|^{p−1}/‖v‖^{p−1}."""
    scaled = v / p_norm(v, p)
    return np.sign(scaled) * np.abs(scaled) ** (p - 1.0)


def start_vectors(dim: int, p: float, rng: np.random.Generator,
                  n_starts: int = ESTIMATOR_STARTS,
                  extra: Sequence[ArrayLike] = ()) -> list[np.ndarray]:
    """
    Стартовые точки: переданные направления, ±e_i, нормированный вектор
    из единиц и случайные единичные векторы (до n_starts штук, но не
    меньше MIN_RANDOM_STARTS).
    """
    starts = [np.asarray(v, dtype=np.float64) for v in extra]
    eye = np.eye(dim)
    for i in range(dim):
        starts.append(eye[i].copy())
        starts.append(-eye[i])
    starts.append(np.ones(dim))
    n_random = max(n_starts - 2 * dim - 1, MIN_RANDOM_STARTS)
    starts.extend(rng.standard_normal((n_random, dim)))
    return [s / p_norm(s, p) for s in starts if p_norm(s, p) > 0]


def sphere_ascent(objective: Callable[[np.ndarray], float],
                  gradient: Callable[[np.ndarray], np.ndarray],
                  x0: np.ndarray, p: float,
                  rel_tol: float = ESTIMATOR_REL_GAIN,
                  max_iter: int = MAX_ASCENT_ITER) -> tuple[float, np.ndarray]:
    """
    Проекционный градиентный подъём на единичной p-сфере.

    Шаг делится пополам, пока значение не вырастет; после удачного шага
    удваивается (не больше 1). Остановка: относительный прирост ниже
    rel_tol STALL_LIMIT раз подряд, либо шаг меньше MIN_STEP.
    """
    x = x0 / p_norm(x0, p)
    value = objective(x)
    step = 1.0
    stalls = 0
    for _ in range(max_iter):
        g = gradient(x)
        g_norm = float(np.linalg.norm(g))
        if not np.isfinite(g_norm) or g_norm == 0.0:
            break
        direction = g / g_norm
        improved = False
        while step >= MIN_STEP:
            candidate = x + step * direction
            candidate_norm = p_norm(candidate, p)
            if candidate_norm > 0:
                candidate = candidate / candidate_norm
                candidate_value = objective(candidate)
                if candidate_value > value:
                    improved = True
                    break
            step *= 0.5
        if not improved:
            break
        gain = candidate_value - value
        x, value = candidate, candidate_value
        step = min(2.0 * step, 1.0)
        if gain <= rel_tol * max(1.0, abs(value)):
            stalls += 1
            if stalls >= STALL_LIMIT:
                break
        else:
            stalls = 0
    return value, x


def norm_increment(x: np.ndarray, y: np.ndarray, h: float, p: float) -> float:
    """
    (‖x+hy‖_p − ‖x‖_p)/h для конечного p без вычитания близких чисел.

    Покоординатно |x_i+hy_i|ᵖ − |x_i|ᵖ = |x_i|ᵖ·expm1(p·log1p(hy_i/x_i)),
    затем ‖x+hy‖ − ‖x‖ = ‖x‖·expm1(log1p(S)/p). Без этого при h = 2⁻⁴⁰
    ошибка округления, делённая на h, съедает всю точность.
    """
    scale = p_norm(x, p)
    xs = x / scale
    d = h * (y / scale)
    ax = np.abs(xs)
    nonzero = ax > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(nonzero, d / np.where(nonzero, xs, 1.0), np.inf)
        small = np.abs(rel) < 0.5
        stable = ax ** p * np.expm1(p * np.log1p(np.where(small, rel, 0.0)))
        direct = np.abs(xs + d) ** p - ax ** p
        total = float(np.sum(np.where(small, stable, direct)))
        increment = math.expm1(math.log1p(total) / p) if total > -1.0 else -1.0
    return scale * increment / h


# ==================== ОПЕРАТОРНАЯ НОРМА ====================

def _ratio_objective(a: DenseMatrix, p: float):
    def objective(x):
        return p_norm(a @ x, p) / p_norm(x, p)

    def gradient(x):
        ax = a @ x
        nx = p_norm(x, p)
        nax = p_norm(ax, p)
        if nax == 0.0:
            return np.zeros_like(x)
        g = a.T @ dual_vector(ax, p) - (nax / nx) * dual_vector(x, p)
        return np.clip(g / nx, -GRADIENT_CLIP, GRADIENT_CLIP)

    return objective, gradient


def operator_p_norm(a: ArrayLike, p, *, seed: int = DEFAULT_SEED,
                    n_starts: int = ESTIMATOR_STARTS,
                    extra_starts: Sequence[ArrayLike] = ()) -> OperatorNorm:
    """
    ‖A‖_{p→p} = sup_{‖x‖_p=1} ‖Ax‖_p.

    p = 1: максимум столбцовых сумм модулей, p = ∞: строчных,
    p = 2: √λ_max(AᵀA). Иначе нижняя оценка (exact=False).
    """
    p = parse_p(p)
    mat = as_square(a)
    if p == 1.0:
        return OperatorNorm(float(np.linalg.norm(mat, 1)), p, True)
    if math.isinf(p):
        return OperatorNorm(float(np.linalg.norm(mat, np.inf)), p, True)
    if p == 2.0:
        top = float(symmetric_eigenvalues(mat.T @ mat)[-1])
        return OperatorNorm(math.sqrt(max(top, 0.0)), p, True)

    rng = np.random.default_rng(seed)
    objective, gradient = _ratio_objective(mat, p)
    best_value, best_x = -math.inf, None
    for x0 in start_vectors(mat.shape[0], p, rng, n_starts, extra_starts):
        value, x = sphere_ascent(objective, gradient, x0, p)
        if value > best_value:
            best_value, best_x = value, x
    logger.debug(f"‖A‖_{p:g} ≥ {best_value:.12g} (оценка, {mat.shape[0]}×{mat.shape[0]})")
    return OperatorNorm(best_value, p, False, as_vector(best_x, "argmax"))


def ensure_estimable_p(p: float) -> float:
    p = parse_p(p)
    if not (1.0 < p < math.inf):
        raise InvalidNormError(f"p: оценщик работает только при 1 < p < ∞, получено {p}")
    return p
