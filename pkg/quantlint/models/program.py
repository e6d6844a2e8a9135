from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, Optional, Tuple, Union

from quantlint.models.quantity import NONAME, Named, QuantName, Quantvar
from quantlint.models.span import Span


def _span() -> Optional[Span]:
    return field(default=None, compare=False, repr=False)


# --- Выражения с единицами -------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Add:
    left: "UnitExpression"
    right: "UnitExpression"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Sub:
    left: "UnitExpression"
    right: "UnitExpression"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class ScalarMul:
    """Умножение на числовой литерал `r * e`: вид и размерность операнда сохраняются."""
    scalar: Fraction
    operand: "UnitExpression"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Mul:
    left: "UnitExpression"
    right: "UnitExpression"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Div:
    left: "UnitExpression"
    right: "UnitExpression"
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Call:
    function: str
    args: Tuple["UnitExpression", ...]
    span: Optional[Span] = _span()


UnitExpression = Union[Var, Add, Sub, ScalarMul, Mul, Div, Call]

ADDITIVE = (Add, Sub)
MULTIPLICATIVE = (Mul, Div)

COMPARE_OPS = ("<", "<=", "=", ">=", ">")


@dataclass(frozen=True)
class Compare:
    op: str
    left: UnitExpression
    right: UnitExpression
    span: Optional[Span] = _span()


BoolExpression = Compare


# --- Операторы ---------------------------------------------------------------

@dataclass(frozen=True)
class Assign:
    var: str
    expr: UnitExpression
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class If:
    cond: BoolExpression
    then_branch: Tuple["Statement", ...]
    else_branch: Tuple["Statement", ...]
    span: Optional[Span] = _span()


Statement = Union[Assign, If]


# --- Объявления --------------------------------------------------------------

@dataclass(frozen=True)
class Declaration:
    var: str
    unit: str
    quant: QuantName = NONAME
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Param:
    var: str
    unit: str
    quant: QuantName = NONAME
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class FunctionDecl:
    name: str
    params: Tuple[Param, ...]
    return_unit: str
    return_quant: QuantName
    body: UnitExpression
    span: Optional[Span] = _span()

    @property
    def is_generic(self) -> bool:
        return any(isinstance(p.quant, Quantvar) for p in self.params) or isinstance(self.return_quant, Quantvar)

    @property
    def returns_named(self) -> bool:
        return isinstance(self.return_quant, Named)


@dataclass(frozen=True)
class Program:
    decls: Tuple[Union[Declaration, FunctionDecl], ...]
    stmts: Tuple[Statement, ...]
    span: Optional[Span] = _span()
    # строка -> правила, разрешённые комментарием `-- quantlint: allow ...`
    suppressions: Dict[int, FrozenSet[str]] = field(default_factory=dict, compare=False, repr=False)

    @property
    def variables(self) -> Tuple[Declaration, ...]:
        return tuple(d for d in self.decls if isinstance(d, Declaration))

    @property
    def functions(self) -> Tuple[FunctionDecl, ...]:
        return tuple(d for d in self.decls if isinstance(d, FunctionDecl))

    def is_suppressed(self, rule: str, span: Optional[Span]) -> bool:
        if span is None:
            return False
        return rule in self.suppressions.get(span.start_line - 1, frozenset())


# --- Обход -------------------------------------------------------------------

def children(node) -> Iterator:
    """Непосредственные потомки узла AST в порядке исходного текста."""
    if isinstance(node, (Add, Sub, Mul, Div)):
        yield node.left
        yield node.right
    elif isinstance(node, ScalarMul):
        yield node.operand
    elif isinstance(node, Call):
        yield from node.args
    elif isinstance(node, Compare):
        yield node.left
        yield node.right
    elif isinstance(node, Assign):
        yield node.expr
    elif isinstance(node, If):
        yield node.cond
        yield from node.then_branch
        yield from node.else_branch
    elif isinstance(node, FunctionDecl):
        yield from node.params
        yield node.body
    elif isinstance(node, Program):
        yield from node.decls
        yield from node.stmts


def walk(node) -> Iterator:
    yield node
    for child in children(node):
        yield from walk(child)
