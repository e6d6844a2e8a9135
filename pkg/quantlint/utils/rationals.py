from fractions import Fraction
import re

_RATIONAL_RE = re.compile(r'^[+-]?(\d+(\.\d+)?|\d+/\d+)$')


def parse_rational(text: str) -> Fraction:
    """Разбирает рациональное число вида `0.9144`, `5/9` или `-3` без потери точности."""
    cleaned = text.strip()
    if not _RATIONAL_RE.match(cleaned):
        raise ValueError(f"Некорректное рациональное число: {text!r}")
    return Fraction(cleaned)


def format_decimal(value: Fraction) -> str:
    """
    Печатает дробь как конечную десятичную запись.

    Подходит только для дробей, у которых знаменатель раскладывается на 2 и 5,
    то есть для всего, что пришло из десятичного литерала.
    """
    if value.denominator == 1:
        return str(value.numerator)

    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"Дробь {value} не имеет конечной десятичной записи")

    digits = max(twos, fives)
    scaled = abs(value.numerator) * (10 ** digits) // value.denominator
    text = str(scaled).rjust(digits + 1, '0')
    whole, frac = text[:-digits], text[-digits:].rstrip('0')
    sign = '-' if value < 0 else ''
    return f"{sign}{whole}.{frac}"


def format_rational(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
