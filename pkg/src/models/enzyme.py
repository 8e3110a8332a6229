# src/models/enzyme.py
"""
Модель фермента: производство X с темпом z, деградация δ, обратимое
связывание X + S ⇄ Y (k₂: связывание, k₁: распад комплекса).

Полная система по (x, y, s):
    ẋ = z − δx + k₁y − k₂sx
    ẏ = −k₁y + k₂sx
    ṡ =  k₁y − k₂sx
сохраняет y + s = S_Y; редуцированная система получается подстановкой
s = S_Y − y и живёт на V = [0, ∞) × [0, S_Y].
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Mapping, Optional

import numpy as np
from numpy.typing import ArrayLike

from linalg.norms import WeightedNorm
from models.vector_field import BoxDomain, VectorField
from utils.errors import InvalidParameterError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

# отсечка неограниченной оси x для сеточного супремума; μ₁ монотонна
# по b = k₁ + k₂x, поэтому хвост x > cap максимума не меняет
DEFAULT_X_CAP = 10.0


@dataclass(frozen=True)
class EnzymeParams:
    z: float = 1.0
    delta: float = 1.0
    k1: float = 1.0
    k2: float = 1.0
    s_y: float = 2.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            value = float(value)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"params.{name}: ожидалось положительное число, получено {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_dict(cls, data: Optional[Mapping[str, Any]]) -> "EnzymeParams":
        data = dict(data or {})
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidParameterError(f"params.{unknown[0]}: неизвестный параметр модели фермента")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def _reduced_rhs(params: EnzymeParams, z_of_t=None):
    z, delta, k1, k2, s_y = params.z, params.delta, params.k1, params.k2, params.s_y

    def rhs(state: np.ndarray, t: float) -> np.ndarray:
        x, y = state[..., 0], state[..., 1]
        signal = z if z_of_t is None else z_of_t(t)
        # поток связывания минус распад комплекса
        flux = k2 * (s_y - y) * x - k1 * y
        return np.stack([signal - delta * x - flux, flux], axis=-1)

    return rhs


def _reduced_jac(params: EnzymeParams):
    delta, k1, k2, s_y = params.delta, params.k1, params.k2, params.s_y

    def jac(state: np.ndarray, t: float) -> np.ndarray:
        x, y = state[..., 0], state[..., 1]
        a = k2 * (s_y - y)
        b = k1 + k2 * x
        out = np.empty(state.shape[:-1] + (2, 2))
        out[..., 0, 0] = -delta - a
        out[..., 0, 1] = b
        out[..., 1, 0] = a
        out[..., 1, 1] = -b
        return out

    return jac


def _reduced_domain(params: EnzymeParams) -> BoxDomain:
    return BoxDomain((0.0, 0.0), (math.inf, params.s_y))


def enzyme_reduced(params: Optional[EnzymeParams] = None) -> VectorField:
    """
    Редуцированная 2-D модель
        F(x, y) = (z − δx + k₁y − k₂(S_Y−y)x, −k₁y + k₂(S_Y−y)x)
    с якобианом J = [[−δ−a, b], [a, −b]], a = k₂(S_Y−y), b = k₁+k₂x.

    Столбцовые суммы J равны (−δ, 0) всюду, отсюда μ₁(J) = 0 при Q = I.
    """
    params = params or EnzymeParams()
    return VectorField(
        name="enzyme",
        dim=2,
        rhs=_reduced_rhs(params),
        domain=_reduced_domain(params),
        jac=_reduced_jac(params),
        params=params.to_dict(),
        default_cap=DEFAULT_X_CAP,
    )


def enzyme_forced(params: Optional[EnzymeParams] = None, amplitude: float = 0.5,
                  frequency: float = 1.0) -> VectorField:
    """
    Модель с переменным сигналом z(t) = z·(1 + amplitude·sin(frequency·t)).

    Якобиан по состоянию тот же, что у редуцированной модели, поэтому
    оценка μ по (x, t) совпадает со стационарной.
    """
    params = params or EnzymeParams()
    if not (0.0 <= amplitude <= 1.0):
        raise InvalidParameterError(f"params.amplitude: ожидалось 0 ≤ amplitude ≤ 1, получено {amplitude}")
    if not math.isfinite(frequency):
        raise InvalidParameterError(f"params.frequency: не число ({frequency})")
    z = params.z

    def z_of_t(t: float) -> float:
        return z * (1.0 + amplitude * math.sin(frequency * t))

    return VectorField(
        name="enzyme-forced",
        dim=2,
        rhs=_reduced_rhs(params, z_of_t),
        domain=_reduced_domain(params),
        jac=_reduced_jac(params),
        time_dependent=True,
        params={**params.to_dict(), "amplitude": amplitude, "frequency": frequency},
        default_cap=DEFAULT_X_CAP,
    )


def enzyme_full(params: Optional[EnzymeParams] = None) -> VectorField:
    """Полная 3-D модель (x, y, s) без подстановки закона сохранения."""
    params = params or EnzymeParams()
    z, delta, k1, k2 = params.z, params.delta, params.k1, params.k2

    def rhs(state, t):
        x, y, s = state[..., 0], state[..., 1], state[..., 2]
        flux = k2 * s * x - k1 * y
        return np.stack([z - delta * x - flux, flux, -flux], axis=-1)

    def jac(state, t):
        x, s = state[..., 0], state[..., 2]
        out = np.zeros(state.shape[:-1] + (3, 3))
        out[..., 0, 0] = -delta - k2 * s
        out[..., 0, 1] = k1
        out[..., 0, 2] = -k2 * x
        out[..., 1, 0] = k2 * s
        out[..., 1, 1] = -k1
        out[..., 1, 2] = k2 * x
        out[..., 2, 0] = -k2 * s
        out[..., 2, 1] = k1
        out[..., 2, 2] = -k2 * x
        return out

    return VectorField(
        name="enzyme-full",
        dim=3,
        rhs=rhs,
        domain=BoxDomain((0.0, 0.0, 0.0), (math.inf, params.s_y, params.s_y)),
        jac=jac,
        params=params.to_dict(),
        default_cap=DEFAULT_X_CAP,
    )


def lift(state: ArrayLike, params: EnzymeParams) -> np.ndarray:
    """(x, y) → (x, y, S_Y − y); работает и со стеком состояний."""
    arr = np.asarray(state, dtype=np.float64)
    return np.concatenate([arr, params.s_y - arr[..., 1:2]], axis=-1)


def project(state: ArrayLike) -> np.ndarray:
    """(x, y, s) → (x, y)."""
    return np.asarray(state, dtype=np.float64)[..., :2].copy()


def enzyme_conservation_check(trajectory, params: Optional[EnzymeParams] = None) -> float:
    """
    max_t |y(t) + s(t) − S_Y| по траектории полной модели.

    Args:
        trajectory: Trajectory или массив состояний формы (T, 3)
        params: параметры модели (нужно S_Y)
    """
    params = params or EnzymeParams()
    states = np.asarray(getattr(trajectory, "states", trajectory), dtype=np.float64)
    if states.ndim != 2 or states.shape[1] != 3:
        raise InvalidParameterError(f"trajectory: ожидались состояния (x, y, s), форма {states.shape}")
    return float(np.max(np.abs(states[:, 1] + states[:, 2] - params.s_y)))


def enzyme_equilibrium(params: Optional[EnzymeParams] = None) -> np.ndarray:
    """x* = z/δ, y* = k₂S_Y x*/(k₁ + k₂x*)."""
    params = params or EnzymeParams()
    x_star = params.z / params.delta
    y_star = params.k2 * params.s_y * x_star / (params.k1 + params.k2 * x_star)
    return np.array([x_star, y_star])


def enzyme_l1_weight(params: Optional[EnzymeParams] = None, zeta: float = 0.25) -> WeightedNorm:
    """Q = diag(1, 1 + δ/(k₂S_Y) − ζ), допустимо 0 < ζ < δ/(k₂S_Y)."""
    params = params or EnzymeParams()
    ratio = params.delta / (params.k2 * params.s_y)
    if not (0.0 < zeta < ratio):
        raise InvalidParameterError(f"zeta: требуется 0 < ζ < δ/(k₂S_Y) = {ratio:g}, получено {zeta}")
    return WeightedNorm(1.0, (1.0, 1.0 + ratio - zeta))


def enzyme_l1_rate(params: Optional[EnzymeParams] = None, q: float = 1.25,
                   x_cap: Optional[float] = DEFAULT_X_CAP) -> float:
    """
    Замкнутая форма sup μ_{1,Q}(J) при Q = diag(1, q) на [0, x_cap] × [0, S_Y].

    Столбцы QJQ⁻¹ дают −δ + a(q−1) и b(1/q − 1); первое растёт по a
    при q > 1, второе убывает по b при q ≥ 1. При q < 1 второй столбец
    растёт по b, и без отсечки супремум равен +∞.
    """
    params = params or EnzymeParams()
    if not q > 0:
        raise InvalidParameterError(f"q: ожидалось q > 0, получено {q}")
    a_max = params.k2 * params.s_y
    first = -params.delta + max(0.0, a_max * (q - 1.0))
    if q >= 1.0:
        b = params.k1
    elif x_cap is None or math.isinf(x_cap):
        return math.inf
    else:
        b = params.k1 + params.k2 * x_cap
    second = b / q - b
    return max(first, second)


def enzyme_boundary_inflow(params: Optional[EnzymeParams] = None, points: int = 33,
                           x_cap: float = DEFAULT_X_CAP) -> dict[str, np.ndarray]:
    """
    Компонента поля вдоль внутренней нормали на гранях V.

    Грань x = 0: ẋ = z + k₁y; грань y = 0: ẏ = k₂S_Y x; грань y = S_Y:
    −ẏ = k₁S_Y. Все значения ≥ 0 ⇔ поле не выводит из V.
    """
    params = params or EnzymeParams()
    field_ = enzyme_reduced(params)
    ys = np.linspace(0.0, params.s_y, points)
    xs = np.linspace(0.0, x_cap, points)
    zeros = np.zeros(points)
    x_face = field_.eval(np.stack([zeros, ys], axis=-1))[:, 0]
    y_low = field_.eval(np.stack([xs, zeros], axis=-1))[:, 1]
    y_high = -field_.eval(np.stack([xs, np.full(points, params.s_y)], axis=-1))[:, 1]
    return {"x=0": x_face, "y=0": y_low, "y=S_Y": y_high}
