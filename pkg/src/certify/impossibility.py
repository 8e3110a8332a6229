# src/certify/impossibility.py
"""
Отрицательный результат для модели фермента: при p > 1 ни один
диагональный вес Q = diag(1, q) не даёт μ_{p,Q}(J) < 0 на всей V.

Свидетель: точка (x, y) ∈ V и направление v = (1, λ) в координатах
QJQ⁻¹, для которых f(h) = ‖(I + hQJQ⁻¹)v‖_pᵖ имеет

    f′(0) = p(bλ/q − a)(1 − λ^{p−1}q) − pδ > 0,

откуда μ_{p,Q}(J) ≥ f′(0)/(p(1 + λᵖ)) > 0. Здесь a = k₂(S_Y − y),
b = k₁ + k₂x.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np
from tqdm import tqdm

from linalg.norms import WeightedNorm, format_p, parse_p
from lognorm.measures import mu_weighted
from models.enzyme import EnzymeParams, enzyme_reduced
from utils.config import DEFAULT_B_CAP, DEFAULT_SEED
from utils.errors import InvalidNormError, InvalidParameterError, WitnessNotFoundError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

WITNESS_SLACK = 1e-9
LAMBDA_SCAN_POINTS = 201

BRANCH_SATURATED = "saturated"      # y = S_Y, x большой, λ малое
BRANCH_FREE = "free"                # x = 0, y = 0, λ большое
BRANCH_MAX_NORM = "max-norm"        # p = ∞


@dataclass(frozen=True)
class ImpossibilityWitness:
    p: float
    q: float
    witness_point: tuple[float, float]
    witness_direction: tuple[float, float]
    lower_bound: float
    branch: str
    a: float
    b: float
    slope: float
    mu_check: Optional[float] = None

    @property
    def lam(self) -> float:
        return self.witness_direction[1]

    def to_dict(self) -> dict:
        return {
            "p": format_p(self.p),
            "q": self.q,
            "witness_point": list(self.witness_point),
            "witness_direction": list(self.witness_direction),
            "lower_bound": self.lower_bound,
            "branch": self.branch,
            "a": self.a,
            "b": self.b,
            "slope": self.slope,
            "mu_check": self.mu_check,
        }


def slope_at_zero(params: EnzymeParams, p: float, q: float, lam: float, a: float, b: float) -> float:
    """f′(0) = p(bλ/q − a)(1 − λ^{p−1}q) − pδ."""
    return p * (b * lam / q - a) * (1.0 - lam ** (p - 1.0) * q) - p * params.delta


def directional_lower_bound(p: float, lam: float, slope: float) -> float:
    """f′(0)/(p‖v‖ᵖ), ‖v‖ᵖ = 1 + λᵖ."""
    return slope / (p * (1.0 + lam ** p))


def _saturated_branch(params: EnzymeParams, p: float, q: float, b_cap: float):
    """a = 0, λ = (1/(pq))^{1/(p−1)}, b удваивается от k₁."""
    lam = (1.0 / (p * q)) ** (1.0 / (p - 1.0))
    b = params.k1
    while slope_at_zero(params, p, q, lam, 0.0, b) <= 0:
        b *= 2.0
        if b > b_cap:
            return None
    x = (b - params.k1) / params.k2
    return (x, params.s_y), lam, 0.0, b


def _free_branch(params: EnzymeParams, p: float, q: float):
    """
    x = 0, y = 0: a = k₂S_Y, b = k₁; λ из (q^{−1/(p−1)}, aq/b), где оба
    множителя f′(0) отрицательны. λ берётся лучшим на логарифмической сетке.
    """
    a, b = params.k2 * params.s_y, params.k1
    lo = q ** (-1.0 / (p - 1.0))
    hi = a * q / b
    if not lo < hi:
        return None
    lams = np.geomspace(lo, hi, LAMBDA_SCAN_POINTS)[1:-1]
    slopes = np.array([slope_at_zero(params, p, q, lam, a, b) for lam in lams])
    best = int(np.argmax(slopes))
    if slopes[best] <= 0:
        return None
    return (0.0, 0.0), float(lams[best]), a, b


def impossibility_search(params: Optional[EnzymeParams] = None, p=2.0, q: float = 1.0,
                         b_cap: float = DEFAULT_B_CAP, *, seed: int = DEFAULT_SEED,
                         verify: bool = True) -> ImpossibilityWitness:
    """
    Ищет точку V, где μ_{p,Q}(J) ≥ 0 при Q = diag(1, q).

    Args:
        params: параметры модели
        p: p > 1 или ∞
        q: вес второй компоненты
        b_cap: предел для b = k₁ + k₂x
        verify: перепроверить свидетеля оценщиком μ (старт из v)

    Raises:
        InvalidNormError: p ≤ 1
        WitnessNotFoundError: b превысило b_cap, запасная ветвь не сработала,
            либо перепроверка дала μ < −1e-9
    """
    params = params or EnzymeParams()
    p = parse_p(p)
    if p <= 1.0:
        raise InvalidNormError(f"p: отрицательный результат относится к p > 1, получено {p}")
    if not (math.isfinite(q) and q > 0):
        raise InvalidParameterError(f"q: ожидалось q > 0, получено {q}")

    if math.isinf(p):
        # μ∞(QJQ⁻¹) = max{−δ−a+b/q, −b+aq}; при a = 0 хватает b > δq
        b = params.k1
        while b / q - params.delta <= 0:
            b *= 2.0
            if b > b_cap:
                raise WitnessNotFoundError(f"b_cap: при p=∞, q={q:g} нужно b > {params.delta * q:g} > {b_cap:g}")
        point = ((b - params.k1) / params.k2, params.s_y)
        witness = ImpossibilityWitness(p, q, point, (1.0, 1.0), b / q - params.delta, BRANCH_MAX_NORM,
                                       0.0, b, b / q - params.delta)
    else:
        found = _saturated_branch(params, p, q, b_cap)
        branch = BRANCH_SATURATED
        if found is None:
            logger.debug(f"p={p:g}, q={q:g}: b > b_cap на основной ветви, перехожу к x = 0, y = 0")
            found = _free_branch(params, p, q)
            branch = BRANCH_FREE
        if found is None:
            raise WitnessNotFoundError(f"b_cap: свидетель для p={p:g}, q={q:g} не найден ниже b_cap={b_cap:g}")
        point, lam, a, b = found
        slope = slope_at_zero(params, p, q, lam, a, b)
        witness = ImpossibilityWitness(p, q, point, (1.0, lam), directional_lower_bound(p, lam, slope),
                                       branch, a, b, slope)

    if verify:
        w = WeightedNorm(p, (1.0, q))
        jac = enzyme_reduced(params).jacobian(np.asarray(witness.witness_point))
        check = mu_weighted(jac, w, seed=seed, extra_starts=[witness.witness_direction]).value
        if check < -WITNESS_SLACK:
            raise WitnessNotFoundError(f"проверка: μ = {check:.3e} < 0 в точке {witness.witness_point}")
        witness = replace(witness, mu_check=float(check))
    logger.debug(f"Свидетель p={p:g}, q={q:g}: {witness.branch}, оценка снизу {witness.lower_bound:.6g}")
    return witness


def impossibility_sweep(params: Optional[EnzymeParams] = None, ps: Iterable = (1.5, 2.0, 4.0, math.inf),
                        qs: Iterable[float] = (0.01, 0.1, 1.0, 10.0, 100.0),
                        b_cap: float = DEFAULT_B_CAP, *, seed: int = DEFAULT_SEED,
                        progress: bool = False) -> list[ImpossibilityWitness]:
    """Свидетели для всех пар (p, q)."""
    qs = [float(q) for q in qs]
    cells = [(parse_p(p), q) for p in ps for q in qs]
    return [
        impossibility_search(params, p, q, b_cap, seed=seed)
        for p, q in tqdm(cells, desc="Свидетели", disable=not progress)
    ]
