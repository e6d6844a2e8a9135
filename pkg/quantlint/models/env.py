from __future__ import annotations
from typing import Dict, Iterator, Mapping, Optional

from quantlint.models.dims import Dims, UnitSpec
from quantlint.models.quantity import Named, Noname, QuantName


class FrozenEnv(Mapping):
    """Неизменяемое окружение: любое обновление возвращает новый объект."""

    def __init__(self, bindings: Optional[Mapping] = None) -> None:
        self._bindings = dict(bindings or {})

    def __getitem__(self, key):
        return self._bindings[key]

    def __iter__(self) -> Iterator:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._bindings!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, FrozenEnv):
            return type(self) is type(other) and self._bindings == other._bindings
        return NotImplemented

    __hash__ = None


class DimEnv(FrozenEnv):
    """ρ: переменная -> размерность. После построения не меняется."""

    def __init__(self, bindings: Optional[Mapping[str, Dims]] = None, units: Optional[Mapping[str, UnitSpec]] = None) -> None:
        super().__init__(bindings)
        self._units: Dict[str, UnitSpec] = dict(units or {})

    def bind(self, var: str, spec: UnitSpec) -> DimEnv:
        bindings = dict(self._bindings)
        units = dict(self._units)
        bindings[var] = spec.dims
        units[var] = spec
        return DimEnv(bindings, units)

    def unit_of(self, var: str) -> Optional[UnitSpec]:
        return self._units.get(var)


class QuantEnv(FrozenEnv):
    """
    τ: переменная -> вид величины.

    Обновления монотонны: привязка может смениться только с Noname на Named.
    """

    def override(self, var: str, qn: QuantName) -> QuantEnv:
        current = self._bindings.get(var)
        if current is not None and current != qn and not (isinstance(current, Noname) and isinstance(qn, Named)):
            raise ValueError(f"Немонотонное обновление τ: {var}: {current} -> {qn}")

        bindings = dict(self._bindings)
        bindings[var] = qn
        return QuantEnv(bindings)

    def promotions(self, since: QuantEnv) -> Dict[str, QuantName]:
        """Переменные, получившие имя относительно окружения since."""
        return {var: qn for var, qn in self._bindings.items() if since.get(var) != qn}
