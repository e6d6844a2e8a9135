"""
Таблица единиц и разбор выражений единиц вида `m * s^-1`, `kg * m^2`, `N * m`.

Множители и показатели хранятся точными дробями: модуль ничего не вычисляет
в плавающей точке.
"""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from quantlint.algebra.dimension import dim_div, dim_mul
from quantlint.errors import AffineComposition, Incommensurable, UnitError, UnknownUnit
from quantlint.models.dims import AffineConversion, Dims, UnitSpec

_TOKEN_RE = re.compile(r'\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[*/^()\-]))')


class UnitTable(Mapping):
    """Неизменяемое отображение символ -> UnitSpec; extend возвращает новую таблицу."""

    def __init__(self, specs: Optional[Mapping[str, UnitSpec]] = None) -> None:
        self._specs: Dict[str, UnitSpec] = dict(specs or {})

    def __getitem__(self, symbol: str) -> UnitSpec:
        return self._specs[symbol]

    def __iter__(self) -> Iterator[str]:
        return iter(self._specs)

    def __len__(self) -> int:
        return len(self._specs)

    def extend(self, symbol: str, spec: UnitSpec) -> UnitTable:
        specs = dict(self._specs)
        specs[symbol] = spec
        return UnitTable(specs)

    @staticmethod
    def default() -> UnitTable:
        return _default_table()


@lru_cache(maxsize=1)
def _default_table() -> UnitTable:
    length, mass, time = Dims.of(1, 0, 0), Dims.of(0, 1, 0), Dims.of(0, 0, 1)
    specs = {
        # базовые единицы СИ
        "m": UnitSpec(length),
        "kg": UnitSpec(mass),
        "s": UnitSpec(time),
        # производные единицы с собственными именами
        "Hz": UnitSpec(Dims.of(0, 0, -1)),
        "N": UnitSpec(Dims.of(1, 1, -2)),
        "Pa": UnitSpec(Dims.of(-1, 1, -2)),
        "J": UnitSpec(Dims.of(2, 1, -2)),
        "W": UnitSpec(Dims.of(2, 1, -3)),
        # кратные и внесистемные
        "g": UnitSpec(mass, Fraction(1, 1000)),
        "km": UnitSpec(length, Fraction(1000)),
        "min": UnitSpec(time, Fraction(60)),
        "h": UnitSpec(time, Fraction(3600)),
        # имперские длины, международное определение 1959 года
        "yard": UnitSpec(length, Fraction("0.9144")),
        "foot": UnitSpec(length, Fraction("0.3048")),
        "inch": UnitSpec(length, Fraction("0.0254")),
        "mile": UnitSpec(length, Fraction("1609.344")),
    }
    long_names = {
        "metre": "m", "kilogram": "kg", "second": "s", "sec": "s",
        "hertz": "Hz", "newton": "N", "pascal": "Pa", "joule": "J", "watt": "W",
    }
    for name, symbol in long_names.items():
        specs[name] = specs[symbol]
    return UnitTable(specs)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(expr: str) -> List[_Token]:
    tokens = []
    pos = 0
    stripped = expr.rstrip()
    while pos < len(stripped):
        match = _TOKEN_RE.match(stripped, pos)
        if not match:
            raise UnitError(f"некорректное выражение единиц '{expr}': неожиданный символ '{stripped[pos]}'")
        kind = match.lastgroup
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def _iroot(value: int, n: int) -> Optional[int]:
    """Точный целый корень степени n или None."""
    if value < 0:
        return None
    lo, hi = 0, 1
    while hi ** n <= value:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** n == value else None


def _rational_power(base: Fraction, power: Fraction) -> Fraction:
    raised = base ** power.numerator
    if power.denominator == 1:
        return raised
    num = _iroot(raised.numerator, power.denominator)
    den = _iroot(raised.denominator, power.denominator)
    if num is None or den is None:
        raise UnitError(f"множитель {base} в степени {power} не является рациональным числом")
    return Fraction(num, den)


@dataclass(frozen=True)
class _Term:
    dims: Dims
    factor: Fraction
    affine: Tuple[str, ...] = ()


class _UnitParser:
    def __init__(self, expr: str, table: Mapping[str, UnitSpec]) -> None:
        self.expr = expr
        self.table = table
        self.tokens = _tokenize(expr)
        self.pos = 0

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        token = self._peek()
        if token is None:
            raise UnitError(f"некорректное выражение единиц '{self.expr}': неожиданный конец")
        self.pos += 1
        return token

    def _expect(self, text: str) -> None:
        token = self._next()
        if token.text != text:
            raise UnitError(f"некорректное выражение единиц '{self.expr}': ожидалось '{text}', найдено '{token.text}'")

    def parse(self) -> _Term:
        if not self.tokens:
            raise UnitError("пустое выражение единиц")
        term = self._term()
        if self._peek() is not None:
            raise UnitError(f"некорректное выражение единиц '{self.expr}': лишний '{self._peek().text}'")
        return term

    def _term(self) -> _Term:
        result = self._factor()
        while self._peek() is not None and self._peek().text in ("*", "/"):
            op = self._next().text
            right = self._factor()
            if op == "*":
                result = _Term(dim_mul(result.dims, right.dims), result.factor * right.factor, result.affine + right.affine)
            else:
                result = _Term(dim_div(result.dims, right.dims), result.factor / right.factor, result.affine + right.affine)
        return result

    def _factor(self) -> _Term:
        atom = self._atom()
        if self._peek() is not None and self._peek().text == "^":
            self._next()
            power = self._power()
            return _Term(atom.dims.scaled(power), _rational_power(atom.factor, power), atom.affine)
        return atom

    def _atom(self) -> _Term:
        token = self._next()
        if token.kind == "ident":
            if token.text not in self.table:
                raise UnknownUnit(token.text)
            spec = self.table[token.text]
            return _Term(spec.dims, spec.factor, (token.text,) if spec.is_affine else ())
        if token.kind == "int" and token.text == "1":
            return _Term(Dims.dimensionless(), Fraction(1))
        if token.text == "(":
            inner = self._term()
            self._expect(")")
            return inner
        raise UnitError(f"некорректное выражение единиц '{self.expr}': неожиданный '{token.text}'")

    def _signed_int(self) -> int:
        sign = 1
        if self._peek() is not None and self._peek().text == "-":
            self._next()
            sign = -1
        token = self._next()
        if token.kind != "int":
            raise UnitError(f"некорректный показатель степени в '{self.expr}'")
        return sign * int(token.text)

    def _power(self) -> Fraction:
        if self._peek() is not None and self._peek().text == "(":
            self._next()
            num = self._signed_int()
            den = 1
            if self._peek() is not None and self._peek().text == "/":
                self._next()
                den = self._signed_int()
            self._expect(")")
            if den == 0:
                raise UnitError(f"нулевой знаменатель показателя в '{self.expr}'")
            return Fraction(num, den)
        return Fraction(self._signed_int())


def unit_to_spec(expr: str, table: Optional[Mapping[str, UnitSpec]] = None) -> UnitSpec:
    """
    Переводит текст выражения единиц в UnitSpec.

    Raises:
        UnknownUnit: символ отсутствует в таблице
        AffineComposition: единица со смещением входит в составное выражение
        UnitError: синтаксическая ошибка в выражении
    """
    table = UnitTable.default() if table is None else table
    parser = _UnitParser(expr, table)
    term = parser.parse()

    if term.affine:
        standalone = len(parser.tokens) == 1
        if not standalone:
            raise AffineComposition(term.affine[0])
        spec = table[term.affine[0]]
        return UnitSpec(spec.dims, spec.factor, spec.offset)

    return UnitSpec(term.dims, term.factor)


def conversion_factor(source: UnitSpec, target: UnitSpec) -> Union[Fraction, AffineConversion]:
    """
    Множитель пересчёта значений из source в target.

    Для линейных единиц возвращает дробь, для пары с ненулевым смещением -
    AffineConversion(scale, offset), такую что v_target = scale * v_source + offset.
    """
    if source.dims != target.dims:
        raise Incommensurable(source.dims, target.dims)

    if not source.is_affine and not target.is_affine:
        return source.factor / target.factor

    return AffineConversion(
        scale=source.factor / target.factor,
        offset=(source.offset - target.offset) / target.factor,
    )
