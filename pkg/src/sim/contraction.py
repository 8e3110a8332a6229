# src/sim/contraction.py
"""
Эмпирическая проверка оценки ‖u(t) − v(t)‖_{p,Q} ≤ e^{ct}‖u(0) − v(0)‖_{p,Q}
и её поточечной формы D⁺‖u − v‖ ≤ c‖u − v‖.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from linalg.norms import WeightedNorm
from sim.integrator import Integrable, integrate
from utils.config import DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

DINI_ABS_SLACK = 1e-6


@dataclass
class EnvelopeCheck:
    """Сравнение ряда с огибающей e^{ct}·value₀ с допуском tolerance."""
    envelope: np.ndarray
    bound_ok: bool
    worst_ratio: float
    worst_time: float

    @property
    def max_violation(self) -> float:
        return max(0.0, self.worst_ratio - 1.0)


def check_envelope(times: np.ndarray, series: np.ndarray, rate_c: float,
                   tolerance: float) -> EnvelopeCheck:
    envelope = series[0] * np.exp(rate_c * times)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(envelope > 0, series / envelope, np.where(series > 0, np.inf, 0.0))
    worst = int(np.argmax(ratios))
    bound_ok = bool(np.all(ratios <= 1.0 + tolerance))
    return EnvelopeCheck(envelope, bound_ok, float(ratios[worst]), float(times[worst]))


def dini_margins(times: np.ndarray, series: np.ndarray, rate_c: float) -> np.ndarray:
    """(‖Δ(t+dt)‖ − ‖Δ(t)‖)/dt − c‖Δ(t)‖ для всех шагов, кроме последнего."""
    return np.diff(series) / np.diff(times) - rate_c * series[:-1]


@dataclass
class ContractionReport:
    rate_c: float
    norm: WeightedNorm
    times: np.ndarray
    distances: np.ndarray
    envelope: np.ndarray
    margins: np.ndarray
    tolerance: float
    bound_ok: bool
    worst_ratio: float
    worst_time: float
    dini_ok: bool
    system: str

    @property
    def max_violation(self) -> float:
        return max(0.0, self.worst_ratio - 1.0)

    @property
    def dini_margins(self) -> list[tuple[float, float]]:
        return list(zip(self.times[:-1].tolist(), self.margins.tolist()))

    def to_frame(self) -> pd.DataFrame:
        margin = np.append(self.margins, np.nan)
        return pd.DataFrame({
            "t": self.times,
            "distance": self.distances,
            "envelope": self.envelope,
            "margin": margin,
        })

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "rate_c": self.rate_c,
            "norm": self.norm.to_dict(),
            "tolerance": self.tolerance,
            "bound_ok": self.bound_ok,
            "dini_ok": self.dini_ok,
            "worst_ratio": self.worst_ratio,
            "worst_time": self.worst_time,
            "max_violation": self.max_violation,
            "max_margin": float(np.max(self.margins)) if self.margins.size else 0.0,
            "initial_distance": float(self.distances[0]),
            "final_distance": float(self.distances[-1]),
            "steps": int(self.times.size - 1),
        }


def verify_contraction(system: Integrable, u0: ArrayLike, v0: ArrayLike, w: WeightedNorm,
                       rate_c: float, t_end: float, dt: float,
                       tolerance: float = DEFAULT_TOLERANCE) -> ContractionReport:
    """
    Интегрирует две траектории с одинаковыми шагами и проверяет огибающую.

    Для сетей и PDE w: норма одной ячейки; расстояние берётся в
    составной норме (для PDE: в сеточной с весом h).

    Returns:
        ContractionReport; bound_ok ⇔ distance(t) ≤ e^{ct}·distance(0)·(1 + tolerance)
    """
    u = integrate(system, u0, t_end, dt)
    v = integrate(system, v0, t_end, dt)
    distances = np.array([system.distance(a - b, w) for a, b in zip(u.states, v.states)])
    check = check_envelope(u.times, distances, rate_c, tolerance)
    margins = dini_margins(u.times, distances, rate_c)
    slack = np.maximum(DINI_ABS_SLACK, tolerance * abs(rate_c) * distances[:-1])
    dini_ok = bool(np.all(margins <= slack))

    report = ContractionReport(rate_c, w, u.times, distances, check.envelope, margins, tolerance,
                               check.bound_ok, check.worst_ratio, check.worst_time, dini_ok, u.system)
    if not check.bound_ok:
        logger.warning(
            f"⚠️ {u.system}: огибающая нарушена, худшее отношение {check.worst_ratio:.6g} при t = {check.worst_time:.6g}"
        )
    if not dini_ok:
        logger.warning(f"⚠️ {u.system}: отступ Дини {float(np.max(margins - slack)):.3e} сверх допуска")
    return report
