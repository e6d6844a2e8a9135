from quantlint.errors import DimMismatch
from quantlint.models.dims import Dims


def dim_add(d1: Dims, d2: Dims) -> Dims:
    """Сложение определено только для совпадающих размерностей (однородность)."""
    if d1 != d2:
        raise DimMismatch(d1, d2)
    return d1


def dim_mul(d1: Dims, d2: Dims) -> Dims:
    return Dims(tuple(a + b for a, b in zip(d1.exponents, d2.exponents)))


def dim_div(d1: Dims, d2: Dims) -> Dims:
    return Dims(tuple(a - b for a, b in zip(d1.exponents, d2.exponents)))
