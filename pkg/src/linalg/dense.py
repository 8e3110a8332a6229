# src/linalg/dense.py
"""
Плотные вещественные векторы и матрицы.

Носителями служат numpy-массивы float64. Конструкторы as_vector / as_matrix
отвергают NaN/Inf: вердикт о сжатии не должен быть пустым из-за
распространившегося NaN.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray
from sklearn.utils import check_array

from utils.errors import DimensionMismatchError, NonFiniteError, NotSymmetricError

logger = logging.getLogger(__name__)

DenseVector = NDArray[np.float64]
DenseMatrix = NDArray[np.float64]

# ==================== КОНФИГУРАЦИЯ ====================

SYMMETRY_TOL = 1e-12


def as_vector(x: ArrayLike, name: str = "x") -> DenseVector:
    """Вектор float64 из конечных чисел."""
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name}: ожидался вектор, получена форма {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatchError(f"{name}: пустой вектор")
    try:
        return check_array(arr, ensure_2d=False, ensure_all_finite=True,
                           dtype=np.float64, input_name=name)
    except ValueError as e:
        raise NonFiniteError(f"{name}: {e}") from e


def as_matrix(a: ArrayLike, name: str = "a") -> DenseMatrix:
    """Матрица float64 из конечных чисел."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name}: ожидалась матрица, получена форма {arr.shape}")
    if arr.size == 0:
        raise DimensionMismatchError(f"{name}: пустая матрица, форма {arr.shape}")
    try:
        return check_array(arr, ensure_all_finite=True, dtype=np.float64, input_name=name)
    except ValueError as e:
        raise NonFiniteError(f"{name}: {e}") from e


def as_square(a: ArrayLike, name: str = "a") -> DenseMatrix:
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"{name}: матрица не квадратная, форма {arr.shape}")
    return arr


def kronecker(a: ArrayLike, b: ArrayLike) -> DenseMatrix:
    """Блочная матрица [a_ij · b]."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def symmetric_eigenvalues(a: ArrayLike) -> NDArray[np.float64]:
    """
    Спектр симметричной матрицы по возрастанию.

    Перед решением матрица симметризуется как (A+Aᵀ)/2; асимметрия
    больше SYMMETRY_TOL (относительно max|a_ij|) считается ошибкой.
    """
    arr = as_square(a)
    scale = max(1.0, float(np.max(np.abs(arr))))
    asymmetry = float(np.max(np.abs(arr - arr.T)))
    if asymmetry > SYMMETRY_TOL * scale:
        raise NotSymmetricError(f"a: матрица не симметрична (max|A−Aᵀ| = {asymmetry:.3e})")
    return np.linalg.eigvalsh(0.5 * (arr + arr.T))


def spectral_abscissa(a: ArrayLike) -> float:
    """Наибольшая вещественная часть собственного значения."""
    arr = as_square(a)
    return float(np.max(np.linalg.eigvals(arr).real))


def require_dim(actual: int, expected: int, name: str) -> None:
    if actual != expected:
        raise DimensionMismatchError(f"{name}: размерность {actual}, ожидалась {expected}")

