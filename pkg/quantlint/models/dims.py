from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

from quantlint.utils.rationals import format_rational

# Порядок базовых размерностей. Правила проверки работают с вектором
# любой длины, поэтому расширение до семи величин СИ сводится к этому кортежу.
BASE_DIMENSIONS: Tuple[str, ...] = ("length", "mass", "time")
BASE_SYMBOLS: Tuple[str, ...] = ("m", "kg", "s")

Exponent = Union[int, Fraction, str]


@dataclass(frozen=True)
class Dims:
    """Вектор рациональных показателей по базовым размерностям (длина, масса, время)."""
    exponents: Tuple[Fraction, ...]

    def __post_init__(self):
        normalized = tuple(Fraction(e) for e in self.exponents)
        if len(normalized) != len(BASE_DIMENSIONS):
            raise ValueError(
                f"Ожидалось {len(BASE_DIMENSIONS)} показателей, получено {len(normalized)}"
            )
        object.__setattr__(self, "exponents", normalized)

    @staticmethod
    def of(*exponents: Exponent) -> Dims:
        return Dims(tuple(Fraction(e) for e in exponents))

    @staticmethod
    def dimensionless() -> Dims:
        return Dims(tuple(Fraction(0) for _ in BASE_DIMENSIONS))

    @staticmethod
    def base(index: int) -> Dims:
        return Dims(tuple(Fraction(1 if i == index else 0) for i in range(len(BASE_DIMENSIONS))))

    @property
    def is_dimensionless(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def scaled(self, power: Fraction) -> Dims:
        return Dims(tuple(e * power for e in self.exponents))

    def to_list(self) -> list:
        return [format_rational(e) for e in self.exponents]

    @staticmethod
    def from_list(items: Iterable[str]) -> Dims:
        return Dims(tuple(Fraction(item) for item in items))

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(e) for e in self.exponents) + ")"

    def as_units(self) -> str:
        """Запись через базовые единицы: `m^2 * kg * s^-2`."""
        parts = []
        for symbol, e in zip(BASE_SYMBOLS, self.exponents):
            if e == 0:
                continue
            if e == 1:
                parts.append(symbol)
            elif e.denominator == 1:
                parts.append(f"{symbol}^{e.numerator}")
            else:
                parts.append(f"{symbol}^({e.numerator} / {e.denominator})")
        return " * ".join(parts) if parts else "1"


@dataclass(frozen=True)
class UnitSpec:
    """
    Единица измерения относительно базовых единиц СИ: v_SI = factor * v + offset.

    Ненулевой offset допустим только у самостоятельных (не составных) символов,
    например у градусов Цельсия.
    """
    dims: Dims
    factor: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "factor", Fraction(self.factor))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.factor <= 0:
            raise ValueError(f"Множитель единицы должен быть положительным: {self.factor}")

    @property
    def is_affine(self) -> bool:
        return self.offset != 0


@dataclass(frozen=True)
class AffineConversion:
    """Пересчёт между аффинными единицами: v_to = scale * v_from + offset."""
    scale: Fraction
    offset: Fraction
