# src/models/registry.py
"""
Реестр именованных моделей: имя + словарь параметров → VectorField.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional

import numpy as np

from models.enzyme import EnzymeParams, enzyme_forced, enzyme_full, enzyme_reduced
from models.linear import counterexample_field, linear_field
from models.vector_field import VectorField
from utils.errors import InvalidParameterError, UnknownModelError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelEntry:
    name: str
    description: str
    builder: Callable[[dict], VectorField]


def _split_params(params: dict, extra: tuple[str, ...]) -> tuple[EnzymeParams, dict]:
    options = {key: params.pop(key) for key in extra if key in params}
    return EnzymeParams.from_dict(params), options


def _build_enzyme(params: dict) -> VectorField:
    return enzyme_reduced(EnzymeParams.from_dict(params))


def _build_enzyme_full(params: dict) -> VectorField:
    return enzyme_full(EnzymeParams.from_dict(params))


def _build_enzyme_forced(params: dict) -> VectorField:
    base, options = _split_params(params, ("amplitude", "frequency"))
    return enzyme_forced(base, **{key: float(value) for key, value in options.items()})


def _build_linear(params: dict) -> VectorField:
    if "matrix" not in params:
        raise InvalidParameterError("params.matrix: линейной модели нужна матрица")
    unknown = sorted(set(params) - {"matrix"})
    if unknown:
        raise InvalidParameterError(f"params.{unknown[0]}: неизвестный параметр линейной модели")
    return linear_field(np.asarray(params["matrix"], dtype=np.float64))


def _build_counterexample(params: dict) -> VectorField:
    if params:
        raise InvalidParameterError(f"params.{sorted(params)[0]}: у модели counterexample нет параметров")
    return counterexample_field()


MODEL_REGISTRY: dict[str, ModelEntry] = {
    entry.name: entry for entry in (
        ModelEntry("enzyme", "редуцированная модель фермента (x, y)", _build_enzyme),
        ModelEntry("enzyme-full", "полная модель фермента (x, y, s)", _build_enzyme_full),
        ModelEntry("enzyme-forced", "модель фермента с сигналом z(t)", _build_enzyme_forced),
        ModelEntry("linear", "линейное поле F(x) = Ax", _build_linear),
        ModelEntry("counterexample", "F(x) = Ax, A = [[−2, 1], [1, −2]]", _build_counterexample),
    )
}


def build_model(name: str, params: Optional[Mapping[str, Any]] = None) -> VectorField:
    """
    Собирает поле по имени из реестра.

    Raises:
        UnknownModelError: имени нет в реестре
        InvalidParameterError: параметр неизвестен или недопустим
    """
    entry = MODEL_REGISTRY.get(name)
    if entry is None:
        raise UnknownModelError(f"model: неизвестная модель {name!r}; доступны {sorted(MODEL_REGISTRY)}")
    field_ = entry.builder(dict(params or {}))
    logger.debug(f"Модель {name} собрана (dim={field_.dim}, якобиан: {field_.jacobian_source})")
    return field_
