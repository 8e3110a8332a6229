# src/lognorm/estimators.py
"""
Оценка μ_p(A) при 1 < p < ∞, где замкнутой формы нет.

Два метода:
  h_quotient: по определению μ(A) = lim_{h→0⁺} (‖I+hA‖_p − 1)/h
               на h = 2⁻ᵏ, k = 4…40;
  semi_inner: sup_{‖x‖_p=1} Σ|x_i|^{p−2}x_i(Ax)_i (полускалярное
               произведение (x, Ax)_+ в L^p).

Оба дают нижние оценки (exact=False).
"""

import logging
import math
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import as_square
from linalg.norms import p_norm
from linalg.operator_norm import (
    GRADIENT_CLIP,
    dual_vector,
    ensure_estimable_p,
    norm_increment,
    operator_p_norm,
    sphere_ascent,
    start_vectors,
)
from lognorm.measures import MeasureResult
from utils.config import DEFAULT_SEED, ESTIMATOR_K_RANGE, ESTIMATOR_STARTS
from utils.errors import InputError, NonMonotoneTraceError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

TRACE_SLACK = 1e-9
# k, на котором запускается полный мультистарт; остальные h
# стартуют с максимизатора соседнего h
ANCHOR_K = 20

METHODS = ("h_quotient", "semi_inner")


def _quotient_functions(a: np.ndarray, h: float, p: float):
    """g_h(x) = (‖x+hAx‖_p − ‖x‖_p)/(h‖x‖_p) и его градиент."""
    def objective(x):
        return norm_increment(x, a @ x, h, p) / p_norm(x, p)

    def gradient(x):
        bx = x + h * (a @ x)
        nx = p_norm(x, p)
        ratio = p_norm(bx, p) / nx
        psi_b = dual_vector(bx, p)
        g = (psi_b + h * (a.T @ psi_b) - ratio * dual_vector(x, p)) / (nx * h)
        return np.clip(g, -GRADIENT_CLIP, GRADIENT_CLIP)

    return objective, gradient


def _semi_inner_functions(a: np.ndarray, p: float):
    """φ(x) = Σ sign(x_i)|x_i|^{p−1}(Ax)_i / ‖x‖_pᵖ и его градиент."""
    def objective(x):
        scaled = x / p_norm(x, p)
        s = np.sign(scaled) * np.abs(scaled) ** (p - 1.0)
        return float(s @ (a @ scaled))

    def gradient(x):
        scaled = x / p_norm(x, p)
        ax = a @ scaled
        magnitude = np.abs(scaled)
        s = np.sign(scaled) * magnitude ** (p - 1.0)
        with np.errstate(divide="ignore"):
            weight = np.where(magnitude > 0, magnitude ** (p - 2.0), GRADIENT_CLIP)
        weight = np.minimum(weight, GRADIENT_CLIP)
        value = float(s @ ax)
        g = (p - 1.0) * weight * ax + a.T @ s - p * value * s
        return np.clip(g, -GRADIENT_CLIP, GRADIENT_CLIP)

    return objective, gradient


def _estimate_h_quotient(a: np.ndarray, p: float, rng: np.random.Generator,
                         extra_starts: Sequence[ArrayLike]) -> MeasureResult:
    k_min, k_max = ESTIMATOR_K_RANGE
    ks = list(range(k_min, k_max + 1))
    hs = [2.0 ** -k for k in ks]
    functions = [_quotient_functions(a, h, p) for h in hs]

    maximizers: dict[int, np.ndarray] = {}
    anchor = ks.index(min(max(ANCHOR_K, k_min), k_max))
    best_value = -math.inf
    for x0 in start_vectors(a.shape[0], p, rng, ESTIMATOR_STARTS, extra_starts):
        value, x = sphere_ascent(*functions[anchor], x0, p)
        if value > best_value:
            best_value, maximizers[anchor] = value, x

    # продолжение по h в обе стороны от опорного k
    for order in (range(anchor + 1, len(ks)), range(anchor - 1, -1, -1)):
        previous = anchor
        for idx in order:
            _, maximizers[idx] = sphere_ascent(*functions[idx], maximizers[previous], p)
            previous = idx

    # каждое значение трассы: максимум g_h по всем найденным точкам;
    # при фиксированном x g_h монотонна по h, поэтому трасса тоже
    points = list(maximizers.values())
    trace = []
    best_x = None
    for idx, h in enumerate(hs):
        objective = functions[idx][0]
        values = [objective(x) for x in points]
        top = int(np.argmax(values))
        trace.append((h, float(values[top])))
        best_x = points[top]

    for (h_prev, v_prev), (h_next, v_next) in zip(trace, trace[1:]):
        if v_next > v_prev + TRACE_SLACK * max(1.0, abs(v_prev)):
            raise NonMonotoneTraceError(
                f"h-трасса растёт: {v_prev:.15g} при h={h_prev:.3e} → {v_next:.15g} при h={h_next:.3e}",
                trace,
            )
    return MeasureResult(trace[-1][1], p, False, tuple(trace), "h_quotient", best_x)


def _estimate_semi_inner(a: np.ndarray, p: float, rng: np.random.Generator,
                         extra_starts: Sequence[ArrayLike]) -> MeasureResult:
    objective, gradient = _semi_inner_functions(a, p)
    best_value, best_x = -math.inf, None
    for x0 in start_vectors(a.shape[0], p, rng, ESTIMATOR_STARTS, extra_starts):
        value, x = sphere_ascent(objective, gradient, x0, p)
        if value > best_value:
            best_value, best_x = value, x
    return MeasureResult(float(best_value), p, False, (), "semi_inner", best_x)


def mu_estimate(a: ArrayLike, p, method: str = "h_quotient", *,
                seed: int = DEFAULT_SEED,
                extra_starts: Sequence[ArrayLike] = ()) -> MeasureResult:
    """
    Оценка μ_p(A) для 1 < p < ∞.

    Args:
        a: квадратная матрица
        p: показатель нормы, строго между 1 и ∞
        method: "h_quotient" или "semi_inner"
        seed: зерно случайных стартов (детерминизм)
        extra_starts: дополнительные стартовые направления

    Returns:
        MeasureResult с exact=False; для h_quotient: с h-трассой

    Raises:
        NonMonotoneTraceError: трасса нарушает монотонность сверх 1e-9
    """
    p = ensure_estimable_p(p)
    mat = as_square(a)
    if method not in METHODS:
        raise InputError(f"method: ожидалось одно из {METHODS}, получено {method!r}")
    rng = np.random.default_rng(seed)
    if method == "h_quotient":
        result = _estimate_h_quotient(mat, p, rng, extra_starts)
    else:
        result = _estimate_semi_inner(mat, p, rng, extra_starts)
    logger.debug(f"μ_{p:g} ≈ {result.value:.12g} ({method})")
    return result


def quotient_trace(a: ArrayLike, p, ks: Sequence[int]) -> list[tuple[float, float]]:
    """
    Прямые разностные отношения (‖I+hA‖_p − 1)/h на h = 2⁻ᵏ.

    Используется как независимый оракул: при p ∈ {1, 2, ∞} норма точная.
    """
    mat = as_square(a)
    eye = np.eye(mat.shape[0])
    trace = []
    for k in ks:
        h = 2.0 ** -k
        norm = operator_p_norm(eye + h * mat, p).value
        trace.append((h, (norm - 1.0) / h))
    return trace
