# src/utils/config.py
"""
Значения по умолчанию и настройки окружения.

Все числовые умолчания собраны здесь, чтобы CLI мог вложить их
в результирующий JSON (воспроизводимость каждого числа).
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).parent.parent.parent
DOCS_DIR = PROJECT_ROOT / "docs"


# ==================== КОНФИГУРАЦИЯ ====================

OUTPUT_DIR_ENV = "CONTRACTION_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = Path("results")

DEFAULT_SEED = 0
DEFAULT_GRID_POINTS = 33
DEFAULT_WEIGHT_CANDIDATES = 41
DEFAULT_WEIGHT_RANGE = (1e-3, 1e3)
DEFAULT_B_CAP = 1e6
DEFAULT_DT_SAFETY = 0.9
DEFAULT_DT = 1e-2
DEFAULT_TOLERANCE = 0.01
DEFAULT_T_END = 20.0
DEFAULT_CELLS = 64
DEFAULT_LENGTH = 1.0
DEFAULT_DIFFUSION = 0.1

ESTIMATOR_K_RANGE = (4, 40)
ESTIMATOR_STARTS = 16
ESTIMATOR_REL_GAIN = 1e-10


def get_output_dir(override: Optional[str] = None) -> Path:
    """
    Каталог для артефактов запуска.

    Приоритет: явный аргумент → переменная окружения (.env) → results/.
    """
    if override:
        return Path(override)
    env_value = os.getenv(OUTPUT_DIR_ENV)
    if env_value:
        return Path(env_value)
    return DEFAULT_OUTPUT_DIR


def defaults_snapshot() -> dict:
    """Снимок умолчаний для вложения в результаты."""
    return {
        "seed": DEFAULT_SEED,
        "grid_points_per_axis": DEFAULT_GRID_POINTS,
        "weight_candidates": DEFAULT_WEIGHT_CANDIDATES,
        "weight_range": list(DEFAULT_WEIGHT_RANGE),
        "b_cap": DEFAULT_B_CAP,
        "dt_safety": DEFAULT_DT_SAFETY,
        "tolerance": DEFAULT_TOLERANCE,
        "estimator_k_range": list(ESTIMATOR_K_RANGE),
        "estimator_starts": ESTIMATOR_STARTS,
        "estimator_rel_gain": ESTIMATOR_REL_GAIN,
    }
