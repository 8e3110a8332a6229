# src/linalg/norms.py
"""
Взвешенные p-нормы ‖x‖_{p,Q} = ‖Qx‖_p с диагональной Q > 0 и сеточные нормы.

Сеточные нормы используют равномерные веса ячеек h = |Ω|/m (правило
средней точки), поэтому дискретное тождество

    (Σ_k h Σ_i q_iᵖ|v_i(ω_k)|ᵖ)^{1/p} = ‖Q(‖v₁‖_{p,h},…,‖v_n‖_{p,h})ᵀ‖_p

выполняется точно.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import DenseVector, as_matrix, as_vector, require_dim
from utils.errors import InvalidNormError

PLike = Union[float, int, str]

_INF_NAMES = {"inf", "+inf", "infinity", "∞"}


def parse_p(p: PLike) -> float:
    """p ∈ [1, ∞]; принимает числа и строки "inf"/"∞"."""
    if isinstance(p, str):
        if p.strip().lower() in _INF_NAMES:
            return math.inf
        try:
            p = float(p)
        except ValueError as e:
            raise InvalidNormError(f"p: не число ({p!r})") from e
    value = float(p)
    if math.isnan(value) or value < 1.0:
        raise InvalidNormError(f"p: должно быть p ≥ 1 или p = ∞, получено {p}")
    return value


def format_p(p: float) -> Union[float, str]:
    return "inf" if math.isinf(p) else p


def p_norm(v: ArrayLike, p: float) -> float:
    """
    ‖v‖_p без переполнения: вектор масштабируется на max|v_i|.

    Важно при больших p (p = 64 в тестах предела p → ∞).
    """
    arr = np.abs(np.asarray(v, dtype=np.float64)).ravel()
    if arr.size == 0:
        return 0.0
    peak = float(np.max(arr))
    if peak == 0.0:
        return 0.0
    if math.isinf(p):
        return peak
    return peak * float(np.sum((arr / peak) ** p)) ** (1.0 / p)


@dataclass(frozen=True)
class WeightedNorm:
    """
    Пара (p, Q): ‖x‖_{p,Q} = ‖Qx‖_p, Q = diag(q₁,…,qₙ), все q_i > 0.
    """
    p: float
    q: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", parse_p(self.p))
        weights = as_vector(self.q, "q")
        if np.any(weights <= 0):
            raise InvalidNormError(f"q: веса должны быть строго положительны, получено {weights.tolist()}")
        object.__setattr__(self, "q", tuple(float(v) for v in weights))

    @classmethod
    def unweighted(cls, p: PLike, dim: int) -> "WeightedNorm":
        return cls(p, (1.0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.q)

    @property
    def weights(self) -> DenseVector:
        return np.asarray(self.q, dtype=np.float64)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.weights)

    @property
    def is_closed_form(self) -> bool:
        return self.p in (1.0, 2.0) or math.isinf(self.p)

    def tiled(self, copies: int) -> "WeightedNorm":
        """Норма на ℝ^{nN}: ‖(‖Qu₁‖_p,…,‖Qu_N‖_p)‖_p = ‖(I_N⊗Q)u‖_p."""
        return WeightedNorm(self.p, self.q * copies)

    def scaled(self, alpha: float) -> "WeightedNorm":
        """αQ задаёт ту же меру, что и Q; при α = 2^k бит в бит."""
        return WeightedNorm(self.p, tuple(alpha * v for v in self.q))

    def __call__(self, x: ArrayLike) -> float:
        return weighted_p_norm(x, self)

    def to_dict(self) -> dict:
        return {"p": format_p(self.p), "q": list(self.q)}


def weighted_p_norm(x: ArrayLike, w: WeightedNorm) -> float:
    """‖Qx‖_p; при p = ∞: max_i q_i|x_i|."""
    vec = as_vector(x, "x")
    require_dim(vec.size, w.dim, "x")
    return p_norm(w.weights * vec, w.p)


# ==================== СЕТОЧНЫЕ НОРМЫ ====================

def grid_norm(values: ArrayLike, h: float, p: float) -> float:
    """‖v‖_{p,h} = (Σ_k h|v(ω_k)|ᵖ)^{1/p}; при p = ∞: max|v|."""
    p = parse_p(p)
    if math.isinf(p):
        return p_norm(values, p)
    return h ** (1.0 / p) * p_norm(values, p)


def species_grid_norms(field: ArrayLike, h: float, p: float) -> DenseVector:
    """Сеточные нормы каждой компоненты; field имеет форму (m, n)."""
    arr = as_matrix(field, "field")
    return np.array([grid_norm(arr[:, i], h, p) for i in range(arr.shape[1])])


def grid_weighted_norm(field: ArrayLike, w: WeightedNorm, h: float) -> float:
    """(Σ_k h Σ_i q_iᵖ|v_i(ω_k)|ᵖ)^{1/p} для поля формы (m, n)."""
    arr = as_matrix(field, "field")
    require_dim(arr.shape[1], w.dim, "field")
    return grid_norm(arr * w.weights[None, :], h, w.p)


def normalized_p_mean(f: ArrayLike, h: float, length: float, p: float) -> float:
    """(h·Σ|f|ᵖ/|Ω|)^{1/p}; неубывает по p и стремится к max|f| при p → ∞."""
    p = parse_p(p)
    if math.isinf(p):
        return p_norm(f, p)
    return (h / length) ** (1.0 / p) * p_norm(f, p)
