from .quantity import diamond, triangle, assign_op
from .dimension import dim_add, dim_mul, dim_div
from .units import UnitTable, unit_to_spec, conversion_factor

__all__ = [
    "diamond",
    "triangle",
    "assign_op",
    "dim_add",
    "dim_mul",
    "dim_div",
    "UnitTable",
    "unit_to_spec",
    "conversion_factor",
]
