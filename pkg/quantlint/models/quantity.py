from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Union, TYPE_CHECKING

from quantlint.models.span import Span

if TYPE_CHECKING:
    from quantlint.models.env import QuantEnv


@dataclass(frozen=True)
class Named:
    """Именованный вид величины, например Named("T") для крутящего момента."""
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("Имя величины не может быть пустым")

    def __str__(self) -> str:
        return f"Named {self.name}"


@dataclass(frozen=True)
class Noname:
    def __str__(self) -> str:
        return "Noname"


@dataclass(frozen=True)
class Quantvar:
    """Переменная вида величины в сигнатуре обобщённой функции (`named ?q`)."""
    id: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("Идентификатор Quantvar не может быть пустым")

    def __str__(self) -> str:
        return f"Quantvar ?{self.id}"


NONAME = Noname()

QuantName = Union[Named, Noname, Quantvar]


def quant_to_dict(qn: QuantName) -> Optional[str]:
    """JSON-представление: имя, null для Noname, `?id` для Quantvar."""
    if isinstance(qn, Named):
        return qn.name
    if isinstance(qn, Quantvar):
        return f"?{qn.id}"
    return None


def quant_from_dict(value: Optional[str]) -> QuantName:
    if value is None:
        return NONAME
    if value.startswith("?"):
        return Quantvar(value[1:])
    return Named(value)


@dataclass(frozen=True)
class Succeed:
    env: "QuantEnv"


@dataclass(frozen=True)
class Fail:
    code: str
    expected: QuantName
    found: QuantName
    target: str
    span: Optional[Span] = None

    @property
    def message(self) -> str:
        return f"переменной '{self.target}' вида {self.expected} нельзя присвоить значение вида {self.found}"


AssignResult = Union[Succeed, Fail]
