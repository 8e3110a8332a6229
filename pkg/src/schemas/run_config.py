# src/schemas/run_config.py
"""
Конфигурация запуска CLI.

Файл конфига: JSON по docs/config.schema.json; флаги командной строки
переопределяют его ключи. После структурной проверки идёт смысловая:
модель существует, p и веса допустимы.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Union

from linalg.norms import format_p, parse_p
from models.registry import MODEL_REGISTRY
from utils.config import (
    DEFAULT_B_CAP,
    DEFAULT_CELLS,
    DEFAULT_DIFFUSION,
    DEFAULT_GRID_POINTS,
    DEFAULT_LENGTH,
    DEFAULT_SEED,
    DEFAULT_T_END,
    DEFAULT_TOLERANCE,
    DEFAULT_WEIGHT_CANDIDATES,
)
from utils.errors import ConfigError, InputError
from utils.io import validate_config

COMMANDS = ("measure", "certify", "search-weights", "impossibility",
            "simulate-network", "simulate-pde", "sync")


@dataclass
class RunConfig:
    command: str
    model: str = "enzyme"
    params: dict = field(default_factory=dict)
    p: Union[float, str] = 1.0
    q: Optional[Union[float, list[float]]] = None
    zeta: Optional[float] = None
    matrix: Optional[list[list[float]]] = None
    point: Optional[list[float]] = None
    method: str = "h_quotient"
    graph: Optional[Union[str, dict]] = None
    cells: int = DEFAULT_CELLS
    length: float = DEFAULT_LENGTH
    diffusion: Union[float, list[float]] = DEFAULT_DIFFUSION
    t_end: float = DEFAULT_T_END
    dt: Optional[float] = None
    tolerance: float = DEFAULT_TOLERANCE
    rate: Optional[float] = None
    points: int = DEFAULT_GRID_POINTS
    cap: Optional[float] = None
    b_cap: float = DEFAULT_B_CAP
    candidates: int = DEFAULT_WEIGHT_CANDIDATES
    u0: Optional[list[float]] = None
    v0: Optional[list[float]] = None
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    progress: bool = False

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """
        Проверяет словарь по схеме и собирает конфиг.

        Raises:
            ConfigError: поле не проходит схему или смысловую проверку
        """
        validate_config(data)
        config = cls(**data)
        config.check()
        return config

    def check(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError("command", f"неизвестная команда {self.command!r}")
        if self.matrix is None and self.model not in MODEL_REGISTRY:
            raise ConfigError("model", f"неизвестная модель {self.model!r}; доступны {sorted(MODEL_REGISTRY)}")
        try:
            self.p = format_p(parse_p(self.p))
        except InputError as e:
            raise ConfigError("p", str(e)) from e
        if self.command in ("simulate-network", "sync") and self.graph is None:
            raise ConfigError("graph", f"команде {self.command} нужен граф")

    def to_dict(self) -> dict:
        return {key: value for key, value in asdict(self).items() if value is not None}

