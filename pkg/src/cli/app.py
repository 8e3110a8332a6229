# src/cli/app.py
"""
Командная строка diffusion-contraction.

Коды выхода: 0: успех, 1: ошибка входных данных,
2: отрицательный вердикт (огибающая нарушена, сертификат не выдан).
"""

import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from cli.pipeline import CommandPipeline, format_summary
from schemas.run_config import COMMANDS, RunConfig
from utils.errors import ConfigError, ContractionError, DomainEscapeError, InputError
from utils.io import load_config_file

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERDICT = 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse завершает процесс с кодом 2; здесь это ошибка входа (1)."""

    def error(self, message: str):
        raise ConfigError("argv", message)


def _number(value: str) -> Any:
    try:
        return int(value) if value.lstrip("-").isdigit() else float(value)
    except ValueError:
        return value


def _number_list(field: str):
    def parse(value: str):
        try:
            items = [float(part) for part in value.split(",") if part.strip()]
        except ValueError as e:
            raise ConfigError(field, f"ожидался список чисел через запятую, получено {value!r}") from e
        return items[0] if len(items) == 1 else items
    return parse


def _json_value(field: str):
    def parse(value: str):
        try:
            return json.loads(value)
        except json.JSONDecodeError:
            if field == "graph":
                return value
            raise ConfigError(field, f"невалидный JSON: {value!r}")
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="diffusion-contraction",
        description="Сертификация сжатия реакционных систем и проверка его сохранения при диффузии",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="команда")
    parser.add_argument("--config", help="JSON-файл конфигурации (флаги его переопределяют)")
    parser.add_argument("--model", help="имя модели из реестра")
    parser.add_argument("--params", type=_json_value("params"), help='параметры модели, JSON: {"delta": 1}')
    parser.add_argument("--p", type=_number, help="показатель нормы (число ≥ 1 или inf)")
    parser.add_argument("--q", type=_number_list("q"), help="веса: q₂ для 2-D или список через запятую; для search-weights: кандидаты")
    parser.add_argument("--zeta", type=float, help="ζ для веса diag(1, 1 + δ/(k₂S_Y) − ζ)")
    parser.add_argument("--matrix", type=_json_value("matrix"), help="матрица для measure, JSON")
    parser.add_argument("--point", type=_number_list("point"), help="точка для measure по якобиану модели")
    parser.add_argument("--method", choices=("h_quotient", "semi_inner"), help="оценщик μ при 1 < p < ∞")
    parser.add_argument("--graph", type=_json_value("graph"), help="path-N | complete-N | cycle-N | star-N или JSON")
    parser.add_argument("--cells", type=int, help="число ячеек сетки PDE")
    parser.add_argument("--length", type=float, help="длина отрезка |Ω|")
    parser.add_argument("--diffusion", type=_number_list("diffusion"), help="коэффициенты диффузии")
    parser.add_argument("--t-end", dest="t_end", type=float, help="конечное время")
    parser.add_argument("--dt", type=float, help="шаг интегрирования")
    parser.add_argument("--tolerance", type=float, help="допуск огибающей (доля)")
    parser.add_argument("--rate", type=float, help="скорость c вместо вычисленной")
    parser.add_argument("--points", type=int, help="точек сетки на ось")
    parser.add_argument("--cap", type=float, help="отсечка неограниченных осей области")
    parser.add_argument("--b-cap", dest="b_cap", type=float, help="предел b в поиске свидетеля")
    parser.add_argument("--candidates", type=int, help="число кандидатов веса на ось")
    parser.add_argument("--out", help="каталог результатов")
    parser.add_argument("--seed", type=int, help="зерно случайных стартов")
    parser.add_argument("--progress", action="store_true", default=None, help="индикатор прогресса")
    parser.add_argument("--verbose", action="store_true", help="подробный лог (DEBUG)")
    return parser


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    logging.getLogger().setLevel(level)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Файл конфига + флаги (флаги важнее) → проверенный RunConfig."""
    data: dict[str, Any] = load_config_file(args.config) if args.config else {}
    overrides = {
        key: value for key, value in vars(args).items()
        if key not in ("config", "verbose") and value is not None
    }
    data.update(overrides)
    if "command" not in data:
        raise ConfigError("command", f"команда не задана; ожидалось одно из {COMMANDS}")
    if isinstance(data.get("point"), float):
        data["point"] = [data["point"]]
    return RunConfig.from_dict(data)


def run(config: RunConfig) -> int:
    """Выполняет команду, пишет артефакты и сводку; возвращает код выхода."""
    result = CommandPipeline(config).run()
    print(format_summary(result))
    return result["exit_code"]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging(args.verbose)
        config = config_from_args(args)
        logger.info(f"🚀 Команда {config.command}")
        return run(config)
    except InputError as e:
        logger.error(f"❌ {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except DomainEscapeError as e:
        logger.error(f"🌀 Траектория покинула область при t = {e.time:g}: {e}")
        print(f"🌀 Численный сбой, не вердикт о сжатии: {e}. Уменьшите --dt", file=sys.stderr)
        return EXIT_VERDICT
    except ContractionError as e:
        logger.error(f"⛔ {type(e).__name__}: {e}")
        print(f"⛔ {e}", file=sys.stderr)
        return EXIT_VERDICT
    except Exception as e:
        logger.exception(f"❌ Непредвиденная ошибка: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
