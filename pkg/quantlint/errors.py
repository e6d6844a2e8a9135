from __future__ import annotations
from typing import TYPE_CHECKING, Iterable, List, Optional, Tuple

if TYPE_CHECKING:
    from quantlint.models.dims import Dims
    from quantlint.models.quantity import QuantName
    from quantlint.models.span import Span


class QuantlintError(Exception):
    """Базовая ошибка проверки. code попадает в диагностику как есть."""
    code = "QUANTLINT-ERROR"

    def __init__(self, message: str, span: Optional[Span] = None) -> None:
        super().__init__(message)
        self.message = message
        self.span = span
        self.call_sites: List[Span] = []

    def at(self, span: Optional[Span]) -> QuantlintError:
        """Привязывает ошибку к узлу, если место ещё не известно."""
        if self.span is None:
            self.span = span
        return self

    def via_call(self, span: Optional[Span]) -> QuantlintError:
        if span is not None:
            self.call_sites.append(span)
        return self


class ParseError(QuantlintError):
    code = "PARSE-ERROR"

    def __init__(self, message: str, span: Optional[Span] = None, expected: Iterable[str] = ()) -> None:
        super().__init__(message, span)
        self.expected: Tuple[str, ...] = tuple(sorted(set(expected)))


class DuplicateDeclaration(ParseError):
    code = "DUPLICATE-DECL"

    def __init__(self, name: str, span: Optional[Span] = None) -> None:
        super().__init__(f"повторное объявление '{name}'", span)
        self.name = name


class UnitError(QuantlintError):
    code = "UNIT-ERROR"


class UnknownUnit(UnitError):
    code = "UNKNOWN-UNIT"

    def __init__(self, symbol: str, span: Optional[Span] = None) -> None:
        super().__init__(f"неизвестная единица '{symbol}'", span)
        self.symbol = symbol


class AffineComposition(UnitError):
    code = "AFFINE-COMPOSITION"

    def __init__(self, symbol: str, span: Optional[Span] = None) -> None:
        super().__init__(f"единицу со смещением '{symbol}' нельзя использовать в составном выражении", span)
        self.symbol = symbol


class Incommensurable(UnitError):
    code = "INCOMMENSURABLE"

    def __init__(self, left: Dims, right: Dims, span: Optional[Span] = None) -> None:
        super().__init__(f"единицы несоизмеримы: {left} и {right}", span)
        self.left = left
        self.right = right


class DimMismatch(QuantlintError):
    code = "DIM-MISMATCH"

    def __init__(self, expected: Dims, found: Dims, span: Optional[Span] = None, context: str = "") -> None:
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}несовпадение размерностей: ожидалось {expected}, получено {found}", span)
        self.expected = expected
        self.found = found


class UnboundVariable(QuantlintError):
    code = "UNBOUND-VARIABLE"

    def __init__(self, name: str, span: Optional[Span] = None) -> None:
        super().__init__(f"необъявленная переменная '{name}'", span)
        self.name = name


class UnknownFunction(QuantlintError):
    code = "UNKNOWN-FUNCTION"

    def __init__(self, name: str, span: Optional[Span] = None) -> None:
        super().__init__(f"функция '{name}' не объявлена выше по тексту", span)
        self.name = name


class ArityMismatch(QuantlintError):
    code = "ARITY-MISMATCH"

    def __init__(self, name: str, expected: int, found: int, span: Optional[Span] = None) -> None:
        super().__init__(f"функция '{name}' ожидает {expected} аргумент(ов), передано {found}", span)
        self.name = name
        self.expected = expected
        self.found = found


class QuantError(QuantlintError):
    """Отказ проверки видов величин."""
    code = "KOQ-ERROR"

    def __init__(self, message: str, span: Optional[Span] = None, names: Tuple[QuantName, ...] = ()) -> None:
        super().__init__(message, span)
        self.names = names


class QuantityMismatch(QuantError):
    code = "KOQ-MISMATCH"

    def __init__(self, left: QuantName, right: QuantName, span: Optional[Span] = None) -> None:
        super().__init__(f"нельзя складывать {left} и {right}: это разные сущности", span, (left, right))
        self.left = left
        self.right = right


class ParameterMismatch(QuantError):
    """Ошибка вида 1: аргумент одного вида передан в параметр другого вида."""
    code = "KOQ-TYPE1"

    def __init__(self, function: str, param: str, expected: QuantName, found: QuantName,
                 span: Optional[Span] = None) -> None:
        super().__init__(
            f"параметр '{param}' функции '{function}' ожидает {expected}, передано {found}",
            span, (expected, found),
        )
        self.function = function
        self.param = param


class ReturnMismatch(QuantError):
    code = "KOQ-RETURN"

    def __init__(self, function: str, declared: QuantName, found: QuantName, span: Optional[Span] = None) -> None:
        super().__init__(
            f"функция '{function}' объявлена как {declared}, а тело имеет вид {found}",
            span, (declared, found),
        )
        self.function = function


class UnifyFail(QuantError):
    code = "KOQ-UNIFY"

    def __init__(self, function: str, quantvar: str, left: QuantName, right: QuantName,
                 span: Optional[Span] = None) -> None:
        super().__init__(
            f"переменная вида ?{quantvar} функции '{function}' связана одновременно с {left} и {right}",
            span, (left, right),
        )
        self.function = function
        self.quantvar = quantvar


class UnresolvedQuantvar(QuantError):
    code = "KOQ-QUANTVAR"

    def __init__(self, qn: QuantName, span: Optional[Span] = None) -> None:
        super().__init__(f"внутренняя ошибка: неразрешённая {qn} вне вызова функции", span, (qn,))
