"""Канонический вывод программы: parse(pretty(p)) структурно равен p."""
from typing import List

from quantlint.models.program import (
    ADDITIVE, Add, Assign, Call, Compare, Declaration, FunctionDecl, If, Mul,
    Param, Program, ScalarMul, Statement, UnitExpression, Var,
)
from quantlint.models.quantity import Named, QuantName, Quantvar
from quantlint.utils.rationals import format_decimal

INDENT = "    "


def _quant(qn: QuantName) -> str:
    if isinstance(qn, Named):
        return f" named {qn.name}"
    if isinstance(qn, Quantvar):
        return f" named ?{qn.id}"
    return ""


def _has_decimal(value) -> bool:
    try:
        format_decimal(value)
    except ValueError:
        return False
    return True


def _is_divided(e: UnitExpression) -> bool:
    """`x / 3` хранится как ScalarMul(1/3, x) и печатается делением."""
    return isinstance(e, ScalarMul) and not _has_decimal(e.scalar)


def _is_unary(e: UnitExpression) -> bool:
    return isinstance(e, (Var, Call, ScalarMul)) and not _is_divided(e)


def _unary(e: UnitExpression) -> str:
    text = pretty_expr(e)
    return text if _is_unary(e) else f"({text})"


def pretty_expr(e: UnitExpression) -> str:
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.function}(" + ", ".join(pretty_expr(a) for a in e.args) + ")"
    if _is_divided(e):
        left = pretty_expr(e.operand)
        if isinstance(e.operand, ADDITIVE):
            left = f"({left})"
        return f"{left} / {format_decimal(1 / e.scalar)}"
    if isinstance(e, ScalarMul):
        return f"{format_decimal(e.scalar)} * {_unary(e.operand)}"
    if isinstance(e, ADDITIVE):
        op = "+" if isinstance(e, Add) else "-"
        right = pretty_expr(e.right)
        if isinstance(e.right, ADDITIVE):
            right = f"({right})"
        return f"{pretty_expr(e.left)} {op} {right}"

    op = "*" if isinstance(e, Mul) else "/"
    left = pretty_expr(e.left)
    if isinstance(e.left, ADDITIVE):
        left = f"({left})"
    return f"{left} {op} {_unary(e.right)}"


def _compare(c: Compare) -> str:
    return f"{pretty_expr(c.left)} {c.op} {pretty_expr(c.right)}"


def _param(p: Param) -> str:
    return f"{p.var} : {p.unit}{_quant(p.quant)}"


def _decl(d) -> str:
    if isinstance(d, Declaration):
        return f"{d.var} : float of {d.unit}{_quant(d.quant)}"
    params = ", ".join(_param(p) for p in d.params)
    return f"fun {d.name}({params}) : {d.return_unit}{_quant(d.return_quant)} = {pretty_expr(d.body)}"


def _stmts(stmts, depth: int) -> List[str]:
    lines = []
    for index, stmt in enumerate(stmts):
        sep = ";" if index < len(stmts) - 1 else ""
        block = _stmt(stmt, depth)
        block[-1] += sep
        lines.extend(block)
    return lines


def _stmt(s: Statement, depth: int) -> List[str]:
    pad = INDENT * depth
    if isinstance(s, Assign):
        return [f"{pad}{s.var} := {pretty_expr(s.expr)}"]
    assert isinstance(s, If)
    return (
        [f"{pad}if {_compare(s.cond)} then"]
        + _stmts(s.then_branch, depth + 1)
        + [f"{pad}else"]
        + _stmts(s.else_branch, depth + 1)
        + [f"{pad}end"]
    )


def pretty(p: Program) -> str:
    lines = ["begin"]
    for index, decl in enumerate(p.decls):
        sep = ";" if index < len(p.decls) - 1 else ""
        lines.append(f"{INDENT}{_decl(decl)}{sep}")
    lines.append("in")
    lines.extend(_stmts(p.stmts, 1))
    lines.append("end")
    return "\n".join(lines) + "\n"
