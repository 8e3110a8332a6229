# src/lognorm/semi_inner.py
"""
Верхнее полускалярное произведение (x, y)_+ = ‖x‖·lim_{h→0⁺}(‖x+hy‖−‖x‖)/h
во взвешенной норме ‖·‖_{p,Q}.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike

from linalg.dense import as_vector, require_dim
from linalg.norms import WeightedNorm, p_norm
from utils.errors import ZeroVectorError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

SEMI_INNER_STEP = 1e-8
RICHARDSON_TOL = 1e-6


def _one_sided_quotient(x: np.ndarray, y: np.ndarray, h: float, p: float) -> float:
    return (p_norm(x + h * y, p) - p_norm(x, p)) / h


def semi_inner_plus(x: ArrayLike, y: ArrayLike, w: WeightedNorm) -> float:
    """
    (x, y)_+ в координатах x̃ = Qx, ỹ = Qy.

    При 1 < p < ∞: явная формула ‖x̃‖^{2−p} Σ|x̃_i|^{p−2}x̃_iỹ_i.
    При p ∈ {1, ∞}: одностороннее разностное отношение с шагом
    SEMI_INNER_STEP (относительно ‖x̃‖/‖ỹ‖) и экстраполяцией Ричардсона.

    Raises:
        ZeroVectorError: x = 0
    """
    xv, yv = as_vector(x, "x"), as_vector(y, "y")
    require_dim(xv.size, w.dim, "x")
    require_dim(yv.size, w.dim, "y")
    xt, yt = w.weights * xv, w.weights * yv
    nx = p_norm(xt, w.p)
    if nx == 0.0:
        raise ZeroVectorError("x: полускалярное произведение не определено при x = 0")
    p = w.p

    if 1.0 < p < math.inf:
        s = xt / nx
        return nx * float(np.sum(np.sign(s) * np.abs(s) ** (p - 1.0) * yt))

    ny = p_norm(yt, p)
    if ny == 0.0:
        return 0.0
    h = SEMI_INNER_STEP * nx / ny
    coarse = _one_sided_quotient(xt, yt, h, p)
    fine = _one_sided_quotient(xt, yt, 0.5 * h, p)
    if abs(coarse - fine) > RICHARDSON_TOL * (1.0 + abs(fine)) * ny:
        logger.warning(f"⚠️ (x,y)_+: отношения при h и h/2 расходятся ({coarse:.12g} vs {fine:.12g})")
    return nx * (2.0 * fine - coarse)
