from .logging import logging
from .union_find import UnionFind
from .rationals import parse_rational, format_decimal, format_rational

__all__ = [
    "logging",
    "UnionFind",
    "parse_rational",
    "format_decimal",
    "format_rational",
]
