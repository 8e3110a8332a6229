# src/schemas/results.py
"""
Формат результирующего JSON. Единая схема для всех команд CLI,
машинная проверка: docs/result.schema.json.
"""

from typing import Any, Optional, TypedDict


class RunResult(TypedDict, total=False):
    command: str
    status: str              # 'ok', 'violated' (огибающая нарушена), 'refused' (нет сертификата)
    exit_code: int           # 0 или 2; ошибки входа (1) результата не пишут
    config: dict[str, Any]   # итоговый конфиг после слияния с флагами
    defaults: dict[str, Any]
    csv: Optional[str]       # путь к временному ряду для simulate-*/sync
    result: dict[str, Any]


STATUS_EXIT_CODES = {"ok": 0, "violated": 2, "refused": 2}


def make_result(command: str, status: str, config: dict, defaults: dict,
                result: dict, csv: Optional[str] = None) -> RunResult:
    return RunResult(
        command=command,
        status=status,
        exit_code=STATUS_EXIT_CODES[status],
        config=config,
        defaults=defaults,
        csv=csv,
        result=result,
    )
