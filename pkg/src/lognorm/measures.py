# src/lognorm/measures.py
"""
Логарифмические нормы (матричные меры) μ_p и μ_{p,Q}.

Замкнутые формы для вещественной n×n матрицы:
    μ₁(A) = max_j (a_jj + Σ_{i≠j} |a_ij|)
    μ₂(A) = λ_max((A+Aᵀ)/2)
    μ∞(A) = max_i (a_ii + Σ_{j≠i} |a_ij|)

Взвешенная мера считается как μ_{p,Q}(A) = μ_p(QAQ⁻¹).
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import DenseVector, as_square, require_dim, symmetric_eigenvalues
from linalg.norms import WeightedNorm, format_p, parse_p
from utils.config import DEFAULT_SEED
from utils.errors import InvalidNormError


@dataclass(frozen=True)
class MeasureResult:
    """
    Значение меры. Для оценок (exact=False) h_trace хранит пары
    (h, (‖I+hA‖−1)/h) в порядке убывания h.
    """
    value: float
    p: float
    exact: bool
    h_trace: tuple[tuple[float, float], ...] = ()
    method: str = "closed_form"
    argmax: Optional[DenseVector] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "p": format_p(self.p),
            "exact": self.exact,
            "method": self.method,
            "h_trace": [list(pair) for pair in self.h_trace],
        }


def is_closed_form_p(p: float) -> bool:
    return p in (1.0, 2.0) or math.isinf(p)


def weighted_similarity(a: np.ndarray, q: ArrayLike) -> np.ndarray:
    """
    QAQ⁻¹ для диагональной Q; работает и со стеком матриц (..., n, n).

    Множитель q_i/q_j считается заранее: при q_i = q_j он равен 1 точно,
    поэтому QDQ⁻¹ = D без округлений.
    """
    q = np.asarray(q, dtype=np.float64)
    return a * (q[:, None] / q[None, :])


def mu_closed_form_batch(a: np.ndarray, p: float) -> np.ndarray:
    """Замкнутые формы над стеком матриц (..., n, n) без проверок входа."""
    n = a.shape[-1]
    diag = np.diagonal(a, axis1=-2, axis2=-1)
    if p == 2.0:
        return np.linalg.eigvalsh(0.5 * (a + np.swapaxes(a, -1, -2)))[..., -1]
    off = np.abs(a) * (1.0 - np.eye(n))
    if p == 1.0:
        return np.max(diag + off.sum(axis=-2), axis=-1)
    if math.isinf(p):
        return np.max(diag + off.sum(axis=-1), axis=-1)
    raise InvalidNormError(f"p: замкнутая форма есть только для p ∈ {{1, 2, ∞}}, получено {p}; используйте mu_estimate")


def mu_closed_form(a: ArrayLike, p) -> float:
    """μ_p(A) по таблице замкнутых форм; p ∈ {1, 2, ∞}."""
    p = parse_p(p)
    if not is_closed_form_p(p):
        raise InvalidNormError(f"p: замкнутая форма есть только для p ∈ {{1, 2, ∞}}, получено {p}; используйте mu_estimate")
    mat = as_square(a)
    if p == 2.0:
        return float(symmetric_eigenvalues(0.5 * (mat + mat.T))[-1])
    return float(mu_closed_form_batch(mat, p))


def mu_weighted(a: ArrayLike, w: WeightedNorm, *, method: str = "h_quotient",
                seed: int = DEFAULT_SEED,
                extra_starts: Sequence[ArrayLike] = ()) -> MeasureResult:
    """
    μ_{p,Q}(A) = μ_p(QAQ⁻¹).

    Для p ∈ {1, 2, ∞}: замкнутая форма, иначе mu_estimate выбранным
    методом; extra_starts задаются в координатах QAQ⁻¹.
    """
    mat = as_square(a)
    require_dim(mat.shape[0], w.dim, "a")
    similar = weighted_similarity(mat, w.weights)
    if w.is_closed_form:
        return MeasureResult(mu_closed_form(similar, w.p), w.p, True)
    from lognorm.estimators import mu_estimate
    return mu_estimate(similar, w.p, method=method, seed=seed, extra_starts=extra_starts)
