from dataclasses import dataclass
import os
from pathlib import Path
from typing import Optional


@dataclass
class Logging:
    LOGGING_NAME: str
    LOGGING_LEVEL: str
    LOGGING_DIR: str
    LOGGING_ON_CONSOLE: bool
    LOGGING_ON_FILE: bool


@dataclass
class Checker:
    UNITS_FILE: Optional[str]
    STRICT_DISCIPLINE: bool
    MAX_CONCURRENT: int
    GATE_QUANT_ON_DIMS: bool


@dataclass
class Config:
    LOGGING: Logging
    CHECKER: Checker


def _flag(name: str, default: str) -> bool:
    return os.environ.get(name, default).strip().lower() == "true"


def get_config() -> Config:
    """
    Загружает конфигурацию quantlint из переменных окружения.

    Флаги командной строки имеют приоритет и накладываются поверх
    этой конфигурации в run_check.

    Returns:
        Config: Объект конфигурации со всеми настройками

    Raises:
        FileNotFoundError: Если QUANTLINT_UNITS_FILE указывает на несуществующий файл
        ValueError: Если QUANTLINT_MAX_CONCURRENT не положительное целое
    """
    raw_concurrent = os.environ.get("QUANTLINT_MAX_CONCURRENT", "4")
    try:
        max_concurrent = int(raw_concurrent)
    except ValueError:
        raise ValueError(f"QUANTLINT_MAX_CONCURRENT должен быть целым числом: {raw_concurrent!r}")
    if max_concurrent < 1:
        raise ValueError(f"QUANTLINT_MAX_CONCURRENT должен быть положительным: {max_concurrent}")

    cnf = Config(
        LOGGING=Logging(
            LOGGING_NAME=os.environ.get("LOGGING_NAME", "quantlint"),
            LOGGING_LEVEL=os.environ.get("LOGGING_LEVEL", "WARNING"),
            LOGGING_DIR=os.environ.get("LOGGING_DIR", "logs"),
            LOGGING_ON_CONSOLE=_flag("LOGGING_ON_CONSOLE", "true"),
            LOGGING_ON_FILE=_flag("LOGGING_ON_FILE", "false"),
        ),
        CHECKER=Checker(
            UNITS_FILE=os.environ.get("QUANTLINT_UNITS_FILE") or None,
            STRICT_DISCIPLINE=_flag("QUANTLINT_STRICT_DISCIPLINE", "false"),
            MAX_CONCURRENT=max_concurrent,
            GATE_QUANT_ON_DIMS=_flag("QUANTLINT_GATE_QUANT", "true"),
        ),
    )

    if cnf.CHECKER.UNITS_FILE and not Path(cnf.CHECKER.UNITS_FILE).exists():
        raise FileNotFoundError(f"Файл единиц не найден: {cnf.CHECKER.UNITS_FILE}")

    return cnf
