"""
Проверка размерностей.

Окружение ρ строится один раз по объявлениям и дальше не меняется.
Ошибки собираются по всей программе, а не до первой.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set

from quantlint import get_logger
from quantlint.algebra.dimension import dim_add, dim_div, dim_mul
from quantlint.algebra.units import conversion_factor, unit_to_spec
from quantlint.errors import (
    ArityMismatch, DimMismatch, DuplicateDeclaration, QuantlintError, UnboundVariable,
    UnitError, UnknownFunction,
)
from quantlint.models.diagnostic import Diagnostic, Phase, Severity
from quantlint.models.dims import AffineConversion, Dims, UnitSpec
from quantlint.models.env import DimEnv
from quantlint.models.program import (
    Add, Assign, Call, Declaration, Div, FunctionDecl, If, Mul, Program, ScalarMul,
    Statement, Sub, UnitExpression, Var, walk,
)
from quantlint.models.span import Span
from quantlint.models.verdict import DimFail, DimValid, DimVerdict
from quantlint.utils import format_rational, logging

DIM_CONVERSION = "DIM-CONVERSION"


@dataclass(frozen=True)
class FunctionSig:
    decl: FunctionDecl
    params: Sequence[UnitSpec]
    returns: UnitSpec


DimFunEnv = Mapping[str, FunctionSig]


def build_dim_env(decls: Sequence[Declaration], table=None, errors: Optional[List[QuantlintError]] = None) -> DimEnv:
    """
    Строит ρ слева направо по объявлениям переменных.

    Если передан список errors, ошибки единиц складываются в него и объявление
    пропускается; иначе первая ошибка выбрасывается.
    """
    env = DimEnv()
    for decl in decls:
        try:
            if decl.var in env:
                raise DuplicateDeclaration(decl.var, decl.span)
            spec = unit_to_spec(decl.unit, table)
        except QuantlintError as e:
            e.at(decl.span)
            if errors is None:
                raise
            errors.append(e)
            continue
        env = env.bind(decl.var, spec)
    return env


def infer_dims(e: UnitExpression, rho: DimEnv, sigma: Optional[DimFunEnv] = None) -> Dims:
    sigma = sigma or {}

    if isinstance(e, Var):
        if e.name not in rho:
            raise UnboundVariable(e.name, e.span)
        return rho[e.name]

    if isinstance(e, ScalarMul):
        return infer_dims(e.operand, rho, sigma)

    if isinstance(e, (Add, Sub)):
        left, right = infer_dims(e.left, rho, sigma), infer_dims(e.right, rho, sigma)
        try:
            return dim_add(left, right)
        except DimMismatch:
            context = "сложение" if isinstance(e, Add) else "вычитание"
            raise DimMismatch(left, right, e.span, context)

    if isinstance(e, Mul):
        return dim_mul(infer_dims(e.left, rho, sigma), infer_dims(e.right, rho, sigma))

    if isinstance(e, Div):
        return dim_div(infer_dims(e.left, rho, sigma), infer_dims(e.right, rho, sigma))

    assert isinstance(e, Call)
    sig = sigma.get(e.function)
    if sig is None:
        raise UnknownFunction(e.function, e.span)
    if len(e.args) != len(sig.params):
        raise ArityMismatch(e.function, len(sig.params), len(e.args), e.span)

    for arg, param, spec in zip(e.args, sig.decl.params, sig.params):
        found = infer_dims(arg, rho, sigma)
        if found != spec.dims:
            raise DimMismatch(spec.dims, found, arg.span, f"аргумент '{param.var}' функции '{e.function}'")
    return sig.returns.dims


def _unit_of(e: UnitExpression, rho: DimEnv, sigma: DimFunEnv) -> Optional[UnitSpec]:
    """Единица выражения, если она однозначно следует из объявлений."""
    if isinstance(e, Var):
        return rho.unit_of(e.name)
    if isinstance(e, ScalarMul):
        return _unit_of(e.operand, rho, sigma)
    if isinstance(e, Call) and e.function in sigma:
        return sigma[e.function].returns
    return None


def _conversion_note(source: Optional[UnitSpec], target: Optional[UnitSpec], span: Span, what: str) -> Optional[Diagnostic]:
    if source is None or target is None or source.dims != target.dims:
        return None
    if source.factor == target.factor and source.offset == target.offset:
        return None

    conversion = conversion_factor(source, target)
    if isinstance(conversion, AffineConversion):
        text = f"v * {format_rational(conversion.scale)} + {format_rational(conversion.offset)}"
        related = {"scale": format_rational(conversion.scale), "offset": format_rational(conversion.offset)}
    else:
        text = f"x {format_rational(conversion)}"
        related = {"factor": format_rational(conversion)}

    return Diagnostic(
        phase=Phase.DIMS,
        code=DIM_CONVERSION,
        message=f"{what}: единицы совместимы, но требуют пересчёта {text}",
        span=span,
        severity=Severity.INFO,
        related=related,
    )


def _call_notes(e: UnitExpression, rho: DimEnv, sigma: DimFunEnv) -> Iterator[Diagnostic]:
    for node in walk(e):
        if not isinstance(node, Call) or node.function not in sigma:
            continue
        sig = sigma[node.function]
        for arg, param, spec in zip(node.args, sig.decl.params, sig.params):
            note = _conversion_note(
                _unit_of(arg, rho, sigma), spec, arg.span, f"аргумент '{param.var}' функции '{node.function}'"
            )
            if note:
                yield note


class _DimChecker:
    def __init__(self, rho: DimEnv, skip_vars: Set[str], skip_functions: Set[str]) -> None:
        self.rho = rho
        self.skip_vars = skip_vars
        self.skip_functions = skip_functions
        self.sigma: Dict[str, FunctionSig] = {}
        self.diagnostics: List[Diagnostic] = []
        self.notes: List[Diagnostic] = []

    def report(self, error: QuantlintError, fallback: Optional[Span]) -> None:
        # следствия уже сообщённой ошибки единиц не дублируются
        if isinstance(error, UnboundVariable) and error.name in self.skip_vars:
            return
        if isinstance(error, UnknownFunction) and error.name in self.skip_functions:
            return
        self.diagnostics.append(Diagnostic.from_error(error, Phase.DIMS, fallback))

    def declare_function(self, decl: FunctionDecl, table) -> None:
        try:
            params = [unit_to_spec(p.unit, table) for p in decl.params]
            returns = unit_to_spec(decl.return_unit, table)
        except UnitError as e:
            self.skip_functions.add(decl.name)
            self.report(e.at(decl.span), decl.span)
            return

        local = DimEnv()
        for param, spec in zip(decl.params, params):
            local = local.bind(param.var, spec)

        try:
            body = infer_dims(decl.body, local, self.sigma)
            if body != returns.dims:
                raise DimMismatch(returns.dims, body, decl.body.span, f"тело функции '{decl.name}'")
        except QuantlintError as e:
            self.report(e, decl.span)

        self.sigma[decl.name] = FunctionSig(decl, tuple(params), returns)

    def check_stmts(self, stmts: Sequence[Statement]) -> None:
        for stmt in stmts:
            if isinstance(stmt, Assign):
                self.check_assign(stmt)
            else:
                self.check_if(stmt)

    def check_assign(self, stmt: Assign) -> None:
        try:
            if stmt.var not in self.rho:
                raise UnboundVariable(stmt.var, stmt.span)
            found = infer_dims(stmt.expr, self.rho, self.sigma)
            expected = self.rho[stmt.var]
            if found != expected:
                raise DimMismatch(expected, found, stmt.expr.span, f"присваивание '{stmt.var}'")
        except QuantlintError as e:
            self.report(e, stmt.span)
            return

        self.notes.extend(_call_notes(stmt.expr, self.rho, self.sigma))
        note = _conversion_note(
            _unit_of(stmt.expr, self.rho, self.sigma), self.rho.unit_of(stmt.var),
            stmt.span, f"присваивание '{stmt.var}'",
        )
        if note:
            self.notes.append(note)

    def check_if(self, stmt: If) -> None:
        cond = stmt.cond
        try:
            left = infer_dims(cond.left, self.rho, self.sigma)
            right = infer_dims(cond.right, self.rho, self.sigma)
            if left != right:
                raise DimMismatch(left, right, cond.span, f"сравнение '{cond.op}'")
        except QuantlintError as e:
            self.report(e, cond.span)

        self.check_stmts(stmt.then_branch)
        self.check_stmts(stmt.else_branch)


@logging(with_params=False)
def check_dims_program(p: Program, table=None) -> DimVerdict:
    """
    Проверяет размерности всей программы.

    Присваивание допустимо, если размерность правой части совпадает с размерностью
    переменной; условие требует совпадения размерностей обеих сторон сравнения
    и корректности обеих ветвей; тело функции проверяется один раз при объявлении.

    Returns:
        DimValid или DimFail со всеми найденными ошибками. Информационные заметки
        о пересчёте единиц (DIM-CONVERSION) на вердикт не влияют.
    """
    logger = get_logger()

    errors: List[QuantlintError] = []
    rho = build_dim_env(p.variables, table, errors)
    skip_vars = {d.var for d in p.variables if d.var not in rho}

    checker = _DimChecker(rho, skip_vars, set())
    for error in errors:
        checker.report(error, p.span)

    for decl in p.functions:
        checker.declare_function(decl, table)

    checker.check_stmts(p.stmts)

    logger.info(
        f"Размерности: переменных {len(rho)}, функций {len(checker.sigma)}, "
        f"ошибок {len(checker.diagnostics)}, заметок {len(checker.notes)}"
    )

    if checker.diagnostics:
        return DimFail(checker.diagnostics, rho, checker.notes)
    return DimValid(rho, checker.notes)
