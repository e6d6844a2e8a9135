from pathlib import Path

import pytest

from quantlint.algebra.units import UnitTable
from quantlint.pipelines.run_check import CheckOptions
from quantlint.syntax import parse

CORPUS_DIR = Path(__file__).parent / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def read_corpus():
    def _read(relative: str) -> str:
        return (CORPUS_DIR / relative).read_text(encoding='utf-8')
    return _read


@pytest.fixture
def load_program(read_corpus):
    def _load(relative: str):
        return parse(read_corpus(relative))
    return _load


@pytest.fixture
def options() -> CheckOptions:
    return CheckOptions(table=UnitTable.default())


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "LOGGING_NAME", "LOGGING_LEVEL", "LOGGING_DIR", "LOGGING_ON_CONSOLE", "LOGGING_ON_FILE",
        "QUANTLINT_UNITS_FILE", "QUANTLINT_STRICT_DISCIPLINE", "QUANTLINT_MAX_CONCURRENT",
        "QUANTLINT_GATE_QUANT",
    ):
        monkeypatch.delenv(name, raising=False)
    # логи в консоль тестам не нужны
    monkeypatch.setenv("LOGGING_ON_CONSOLE", "false")
