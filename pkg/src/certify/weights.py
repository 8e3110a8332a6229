# src/certify/weights.py
"""
Поиск диагонального веса Q, минимизирующего sup μ_{p,Q}(J_F).

μ_{p,αQ} = μ_{p,Q}, поэтому q₁ = 1 фиксируется, а по остальным осям
перебираются логарифмически разнесённые кандидаты. После перебора:
один проход покоординатного уточнения в log q.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar
from tqdm import tqdm

from certify.certificate import ContractionCertificate, issue_certificate
from linalg.norms import WeightedNorm, parse_p
from lognorm.lipschitz import GridSpec, LipschitzEstimate, lipschitz_constant
from models.vector_field import VectorField
from utils.config import DEFAULT_SEED, DEFAULT_WEIGHT_CANDIDATES, DEFAULT_WEIGHT_RANGE
from utils.errors import InputError

logger = logging.getLogger(__name__)

# ==================== КОНФИГУРАЦИЯ ====================

EXHAUSTIVE_LIMIT = 5000
REFINE_XATOL = 1e-6


def default_candidates(count: int = DEFAULT_WEIGHT_CANDIDATES,
                       weight_range: tuple[float, float] = DEFAULT_WEIGHT_RANGE) -> np.ndarray:
    """Логарифмическая сетка; показатели округлены, чтобы 1.0 было точным."""
    lo, hi = (math.log10(v) for v in weight_range)
    return 10.0 ** np.round(np.linspace(lo, hi, count), 12)


@dataclass
class WeightSearchResult:
    norm: WeightedNorm
    rate: float
    estimate: LipschitzEstimate
    evaluations: int
    strategy: str
    certificate: Optional[ContractionCertificate] = None
    history: list[tuple[tuple[float, ...], float]] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "norm": self.norm.to_dict(),
            "rate": self.rate,
            "evaluations": self.evaluations,
            "strategy": self.strategy,
            "certified": self.certificate is not None,
            "argmax": self.estimate.argmax_point.tolist(),
        }


class _RateCache:
    """Мемоизация sup μ_{p,Q} по кортежу весов."""

    def __init__(self, f: VectorField, p: float, grid: GridSpec, seed: int):
        self.f, self.p, self.grid, self.seed = f, p, grid, seed
        self.values: dict[tuple[float, ...], LipschitzEstimate] = {}

    def __call__(self, q: tuple[float, ...]) -> float:
        if q not in self.values:
            self.values[q] = lipschitz_constant(self.f, WeightedNorm(self.p, q), self.grid, seed=self.seed)
        return self.values[q].value

    def best(self) -> tuple[tuple[float, ...], LipschitzEstimate]:
        # при равенстве: вес, ближайший к единичному
        q = min(self.values, key=lambda key: (self.values[key].value, sum(abs(math.log(v)) for v in key)))
        return q, self.values[q]


def _exhaustive(cache: _RateCache, dim: int, candidates: np.ndarray, progress: bool) -> None:
    combos = itertools.product(candidates.tolist(), repeat=dim - 1)
    total = len(candidates) ** (dim - 1)
    for combo in tqdm(combos, total=total, desc="Перебор весов", disable=not progress):
        cache((1.0,) + tuple(combo))


def _coordinate_descent(cache: _RateCache, dim: int, candidates: np.ndarray, progress: bool,
                        max_passes: int = 5) -> None:
    current = [1.0] * dim
    cache(tuple(current))
    for sweep in range(max_passes):
        changed = False
        for axis in tqdm(range(1, dim), desc=f"Проход {sweep + 1}", disable=not progress):
            for value in candidates.tolist():
                trial = list(current)
                trial[axis] = value
                cache(tuple(trial))
            best_q, _ = cache.best()
            if list(best_q) != current:
                current, changed = list(best_q), True
        if not changed:
            break


def _refine(cache: _RateCache, candidates: np.ndarray) -> None:
    """Одно покоординатное уточнение в log q внутри диапазона кандидатов."""
    lo, hi = math.log(float(candidates.min())), math.log(float(candidates.max()))
    if hi - lo <= 0:
        return
    for axis in range(1, len(cache.best()[0])):
        base = list(cache.best()[0])

        def objective(log_q: float) -> float:
            trial = list(base)
            trial[axis] = math.exp(log_q)
            return cache(tuple(trial))

        result = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                 options={"xatol": REFINE_XATOL})
        logger.debug(f"Уточнение оси {axis}: q = {math.exp(result.x):.8g}, μ = {result.fun:.12g}")


def search_weights(f: VectorField, p, grid: Optional[GridSpec] = None,
                   candidates: Optional[Sequence[float]] = None, *,
                   strategy: str = "auto", refine: bool = True,
                   seed: int = DEFAULT_SEED, progress: bool = False) -> WeightSearchResult:
    """
    Минимизирует lipschitz_constant по диагональным весам (q₁ = 1).

    Args:
        f: поле реакций
        p: показатель нормы
        grid: сетка для супремума
        candidates: кандидаты для каждой свободной оси (все > 0)
        strategy: "exhaustive", "coordinate" или "auto" (перебор, если
            кандидатов не больше EXHAUSTIVE_LIMIT)
        refine: уточнить лучший вес через scipy.optimize.minimize_scalar

    Returns:
        WeightSearchResult; certificate заполнен, только если rate < 0

    Raises:
        InputError: пустой набор кандидатов или неположительный кандидат
    """
    p = parse_p(p)
    grid = grid or GridSpec()
    cands = default_candidates() if candidates is None else np.asarray(list(candidates), dtype=np.float64)
    if cands.size == 0:
        raise InputError("candidates: пустой набор кандидатов")
    if np.any(~np.isfinite(cands)) or np.any(cands <= 0):
        raise InputError(f"candidates: все веса должны быть > 0, получено {cands.tolist()}")
    cands = np.unique(cands)

    cache = _RateCache(f, p, grid, seed)
    if f.dim == 1:
        strategy = "trivial"
        cache((1.0,))
    else:
        if strategy == "auto":
            strategy = "exhaustive" if cands.size ** (f.dim - 1) <= EXHAUSTIVE_LIMIT else "coordinate"
        if strategy == "exhaustive":
            _exhaustive(cache, f.dim, cands, progress)
        elif strategy == "coordinate":
            _coordinate_descent(cache, f.dim, cands, progress)
        else:
            raise InputError(f"strategy: ожидалось exhaustive, coordinate или auto, получено {strategy!r}")
        if refine:
            _refine(cache, cands)

    best_q, estimate = cache.best()
    norm = WeightedNorm(p, best_q)
    certificate = None
    if estimate.value < 0:
        certificate = issue_certificate(f, norm, grid, seed=seed, estimate=estimate)
    logger.info(f"🔎 {f.name}: лучший вес Q={list(best_q)} (μ = {estimate.value:.12g}, {len(cache.values)} оценок)")
    history = [(key, est.value) for key, est in cache.values.items()]
    return WeightSearchResult(norm, estimate.value, estimate, len(cache.values), strategy,
                              certificate, history)
