# src/utils/errors.py
"""
Иерархия исключений проекта.

InputError наследует ValueError, поэтому вызывающий код может ловить
привычный ValueError. CLI переводит InputError в код выхода 1,
отрицательные вердикты (нарушенная оценка, отказ в сертификате): в код 2.
"""

from typing import Any, Optional, Sequence


class ContractionError(Exception):
    """Базовое исключение библиотеки."""


# ==================== ОШИБКИ ВХОДНЫХ ДАННЫХ ====================

class InputError(ContractionError, ValueError):
    """Некорректные входные данные (код выхода 1)."""


class DimensionMismatchError(InputError):
    pass


class NonFiniteError(InputError):
    pass


class InvalidNormError(InputError):
    pass


class NotSymmetricError(InputError):
    pass


class InvalidParameterError(InputError):
    pass


class InvalidLaplacianError(InputError):
    pass


class DisconnectedGraphError(InputError):
    def __init__(self, message: str, zero_multiplicity: int):
        super().__init__(message)
        self.zero_multiplicity = zero_multiplicity


class UnknownModelError(InputError):
    pass


class ZeroVectorError(InputError):
    pass


class StepSizeError(InputError):
    def __init__(self, message: str, max_dt: float):
        super().__init__(message)
        self.max_dt = max_dt


class ConfigError(InputError):
    """Ошибка конфигурации запуска; field: путь к полю конфига."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ==================== ОШИБКИ ВЫЧИСЛЕНИЙ / ВЕРДИКТЫ ====================

class DomainEscapeError(ContractionError):
    def __init__(self, message: str, time: float, state: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.time = time
        self.state = state


class NonMonotoneTraceError(ContractionError):
    """h-трасса оценщика логарифмической нормы не убывает монотонно."""

    def __init__(self, message: str, trace: Sequence[tuple[float, float]]):
        super().__init__(message)
        self.trace = list(trace)


class CertificateRefusedError(ContractionError):
    def __init__(self, message: str, rate: float, argmax: Any = None):
        super().__init__(message)
        self.rate = rate
        self.argmax = argmax


class WitnessNotFoundError(ContractionError):
    pass
