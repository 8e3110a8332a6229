# src/sim/integrator.py
"""
Явный метод Рунге-Кутты 4-го порядка с фиксированным шагом.

Парные траектории должны иметь общие моменты времени, поэтому шаг не
адаптивный. Выход из области фиксируется и прерывает интегрирование.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from graphnet.network import NetworkSystem
from linalg.dense import as_vector, require_dim
from models.vector_field import VectorField
from utils.errors import DomainEscapeError, InputError, StepSizeError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

DOMAIN_ESCAPE_TOL = 1e-9


Integrable = Union[VectorField, NetworkSystem]


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    system: str

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.states = np.asarray(self.states, dtype=np.float64)
        if self.states.shape[0] != self.times.size:
            raise InputError(f"trajectory: {self.times.size} моментов и {self.states.shape[0]} состояний")
        if np.any(np.diff(self.times) <= 0):
            raise InputError("trajectory.times: моменты времени должны строго возрастать")

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.states, columns=[f"u{i}" for i in range(self.states.shape[1])])
        frame.insert(0, "t", self.times)
        return frame


def rk4_step(rhs: Callable[[np.ndarray, float], np.ndarray], u: np.ndarray,
             t: float, dt: float) -> np.ndarray:
    k1 = rhs(u, t)
    k2 = rhs(u + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = rhs(u + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = rhs(u + dt * k3, t + dt)
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_count(t_end: float, dt: float) -> int:
    """Число шагов, после которых конечное время ≥ t_end."""
    return max(int(math.ceil(t_end / dt - 1e-9)), 0)


def check_step(system: Integrable, dt: float, t_end: float) -> None:
    if not (math.isfinite(dt) and dt > 0):
        raise InputError(f"dt: шаг должен быть > 0, получено {dt}")
    if not (math.isfinite(t_end) and t_end >= 0):
        raise InputError(f"t_end: ожидалось конечное t_end ≥ 0, получено {t_end}")
    max_dt = getattr(system, "max_dt", None)
    if max_dt is not None and dt > max_dt * (1.0 + 1e-12):
        raise StepSizeError(
            f"dt: шаг {dt:g} превышает предел явной устойчивости {max_dt:.6g}; используйте dt ≤ {max_dt:.6g}",
            max_dt,
        )


def integrate(system: Integrable, u0: ArrayLike, t_end: float, dt: float) -> Trajectory:
    """
    Интегрирует u̇ = F(u, t) от t = 0 с шагом dt.

    Raises:
        InputError: u0 вне области, dt ≤ 0
        StepSizeError: для PDE шаг больше safety·h²/(2 max d)
        DomainEscapeError: состояние покинуло область (с первым моментом выхода)
    """
    check_step(system, dt, t_end)
    u = as_vector(u0, "u0").copy()
    require_dim(u.size, system.dim, "u0")
    domain = system.domain
    if not domain.contains(u, DOMAIN_ESCAPE_TOL):
        raise InputError("u0: начальное состояние вне области")

    n_steps = step_count(t_end, dt)
    times = dt * np.arange(n_steps + 1)
    states = np.empty((n_steps + 1, u.size))
    states[0] = u
    for k in range(n_steps):
        u = rk4_step(system.eval, u, times[k], dt)
        if not np.all(np.isfinite(u)) or not domain.contains(u, DOMAIN_ESCAPE_TOL):
            raise DomainEscapeError(
                f"траектория покинула область при t = {times[k + 1]:.6g}",
                float(times[k + 1]), u.tolist(),
            )
        states[k + 1] = u
    name = getattr(system, "name", "system")
    logger.debug(f"{name}: {n_steps} шагов RK4, dt={dt:g}, t_end={times[-1]:g}")
    return Trajectory(times, states, name)
