# src/utils/io.py
"""
Ввод/вывод артефактов: JSON результатов, CSV временных рядов, схемы.
"""

import json
import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np
import pandas as pd

from utils.config import DOCS_DIR
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


class NumpyJSONEncoder(json.JSONEncoder):
    """JSON-энкодер, понимающий numpy-типы."""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, Path):
            return str(obj)
        return super().default(obj)


def to_jsonable(obj: Any) -> Any:
    """
    Рекурсивно приводит структуру к строгому JSON.

    Бесконечности пишутся строками "inf"/"-inf" (JSON их не допускает),
    NaN: как null.
    """
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps_result(payload: dict) -> str:
    return json.dumps(to_jsonable(payload), cls=NumpyJSONEncoder, indent=2,
                      sort_keys=True, ensure_ascii=False, allow_nan=False)


def write_json(path: Path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_result(payload) + "\n", encoding="utf-8")
    logger.debug(f"JSON записан: {path}")
    return path


def write_timeseries_csv(path: Path, frame: pd.DataFrame) -> Path:
    """CSV с полной двойной точностью (17 значащих цифр)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    logger.debug(f"CSV записан: {path} ({len(frame)} строк)")
    return path


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    with open(DOCS_DIR / name, "r", encoding="utf-8") as f:
        return json.load(f)


def validate_result(payload: dict) -> None:
    """Проверка результата по docs/result.schema.json."""
    jsonschema.validate(to_jsonable(payload), load_schema("result.schema.json"))


def validate_config(data: dict) -> None:
    """
    Проверка конфига по docs/config.schema.json.

    Ошибка называет поле, в котором нашлось несоответствие.
    """
    validator = jsonschema.Draft202012Validator(load_schema("config.schema.json"))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.path))
    if errors:
        first = errors[0]
        field = ".".join(str(part) for part in first.path) or "<root>"
        raise ConfigError(field, first.message)


def load_config_file(path: Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError("config", f"файл {path} не найден")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"невалидный JSON: {e}") from e
