"""
Проверка видов величин (named quantities).

Выполняется после проверки размерностей: здесь считается, что все выражения
размерностно корректны, и отслеживаются только имена величин. Окружение τ
передаётся по значению от оператора к оператору и может лишь уточняться
с Noname до Named.
"""
from __future__ import annotations
from dataclasses import replace
from typing import Dict, List, Mapping, Optional, Sequence

from quantlint import get_logger
from quantlint.algebra.quantity import assign_op, diamond, triangle
from quantlint.errors import (
    ArityMismatch, ParameterMismatch, QuantityMismatch, QuantlintError, ReturnMismatch,
    UnboundVariable, UnifyFail, UnknownFunction,
)
from quantlint.models.diagnostic import Diagnostic, Phase, Severity
from quantlint.models.env import QuantEnv
from quantlint.models.program import (
    Add, Assign, Call, Div, FunctionDecl, If, Mul, Program, ScalarMul, Statement, Sub,
    UnitExpression, Var,
)
from quantlint.models.quantity import NONAME, AssignResult, Fail, Named, QuantName, Quantvar, Succeed
from quantlint.models.span import Span
from quantlint.models.verdict import QuantFail, QuantSucceed, QuantVerdict
from quantlint.utils import UnionFind, logging

BRANCH_DIVERGENCE = "KOQ-BRANCH-DIVERGENCE"
GUARD_MISMATCH = "KOQ-GUARD-MISMATCH"

FunEnv = Mapping[str, FunctionDecl]


def unify_quantvars(decl: FunctionDecl, argnames: Sequence[QuantName], span: Optional[Span] = None) -> Dict[str, QuantName]:
    """
    Сопоставляет переменные вида сигнатуры с видами фактических аргументов.

    Параметры с общей Quantvar объединяются в один класс (представитель -
    параметр с наименьшим номером); имя класса получается как diamond имён
    всех его аргументов, так что Noname приводится вверх к Named.

    Returns:
        Подстановка id -> Named или Noname, если ни один аргумент класса не именован.

    Raises:
        UnifyFail: в один класс попали два разных Named
    """
    classes: UnionFind[int] = UnionFind(range(len(decl.params)))
    first_index: Dict[str, int] = {}
    for index, param in enumerate(decl.params):
        if isinstance(param.quant, Quantvar):
            qid = param.quant.id
            classes.union(first_index.setdefault(qid, index), index)

    class_names: Dict[int, QuantName] = {}
    for root, members in classes.classes().items():
        name: QuantName = NONAME
        for index in members:
            try:
                name = diamond(name, argnames[index])
            except QuantityMismatch:
                qid = decl.params[root].quant.id
                raise UnifyFail(decl.name, qid, name, argnames[index], span)
        class_names[root] = name

    return {qid: class_names[classes.find(index)] for qid, index in first_index.items()}


def _substitute(qn: QuantName, subst: Mapping[str, QuantName]) -> QuantName:
    if isinstance(qn, Quantvar):
        return subst[qn.id]
    return qn


def invoke_function(fname: str, args: Sequence[UnitExpression], tau: QuantEnv, sigma: FunEnv,
                    span: Optional[Span] = None) -> QuantName:
    """
    Вид результата вызова функции.

    Каждый аргумент связывается со своим параметром через assign_op относительно
    пустого окружения; тело выводится в окружении параметров с учётом этих
    уточнений, а результат - diamond объявленного вида и вида тела.
    """
    decl = sigma.get(fname)
    if decl is None:
        raise UnknownFunction(fname, span)
    if len(args) != len(decl.params):
        raise ArityMismatch(fname, len(decl.params), len(args), span)

    argnames = [infer_quant(arg, tau, sigma) for arg in args]

    subst: Dict[str, QuantName] = {}
    if decl.is_generic:
        subst = unify_quantvars(decl, argnames, span)

    param_names = [_substitute(p.quant, subst) for p in decl.params]
    body_env = QuantEnv({p.var: qn for p, qn in zip(decl.params, param_names)})

    for param, expected, arg, found in zip(decl.params, param_names, args, argnames):
        result = assign_op(param.var, expected, found, QuantEnv())
        if isinstance(result, Fail):
            raise ParameterMismatch(fname, param.var, expected, found, arg.span)
        for var, qn in result.env.items():
            body_env = body_env.override(var, qn)

    try:
        body = infer_quant(decl.body, body_env, sigma)
    except QuantlintError as e:
        raise e.via_call(span)

    declared = _substitute(decl.return_quant, subst)
    try:
        return diamond(declared, body)
    except QuantityMismatch:
        raise ReturnMismatch(fname, declared, body, span)


def infer_quant(e: UnitExpression, tau: QuantEnv, sigma: FunEnv) -> QuantName:
    if isinstance(e, Var):
        if e.name not in tau:
            raise UnboundVariable(e.name, e.span)
        return tau[e.name]

    if isinstance(e, ScalarMul):
        return infer_quant(e.operand, tau, sigma)

    if isinstance(e, (Add, Sub)):
        left, right = infer_quant(e.left, tau, sigma), infer_quant(e.right, tau, sigma)
        try:
            return diamond(left, right)
        except QuantityMismatch as err:
            raise err.at(e.span)

    if isinstance(e, (Mul, Div)):
        return triangle(infer_quant(e.left, tau, sigma), infer_quant(e.right, tau, sigma))

    assert isinstance(e, Call)
    return invoke_function(e.function, e.args, tau, sigma, e.span)


def check_assignment(s: Assign, tau: QuantEnv, sigma: FunEnv) -> AssignResult:
    """
    Вид правой части сверяется с видом переменной через assign_op.

    Raises:
        QuantlintError: ошибка вывода вида правой части
    """
    if s.var not in tau:
        raise UnboundVariable(s.var, s.span)

    found = infer_quant(s.expr, tau, sigma)
    result = assign_op(s.var, tau[s.var], found, tau)
    if isinstance(result, Fail):
        return replace(result, span=s.span)
    return result


def _fail_diagnostic(fail: Fail) -> Diagnostic:
    return Diagnostic(
        phase=Phase.QUANT,
        code=fail.code,
        message=fail.message,
        span=fail.span,
        related={"names": [str(fail.expected), str(fail.found)]},
    )


def _divergence_notes(stmt: If, tau: QuantEnv, tau_then: QuantEnv, sigma: FunEnv) -> List[Diagnostic]:
    alone = check_quant_stmts(stmt.else_branch, tau, sigma)
    if not alone.ok:
        return []

    then_promoted = tau_then.promotions(tau)
    else_promoted = alone.env.promotions(tau)
    notes = []
    for var in sorted(set(then_promoted) & set(else_promoted)):
        if then_promoted[var] != else_promoted[var]:
            notes.append(Diagnostic(
                phase=Phase.QUANT,
                code=BRANCH_DIVERGENCE,
                message=(
                    f"ветви условия по-разному уточняют '{var}': "
                    f"then даёт {then_promoted[var]}, else сам по себе дал бы {else_promoted[var]}"
                ),
                span=stmt.span,
                severity=Severity.INFO,
                related={"names": [str(then_promoted[var]), str(else_promoted[var])]},
            ))
    return notes


def _guard_note(stmt: If, tau: QuantEnv, sigma: FunEnv) -> Optional[Diagnostic]:
    # условие не входит в правило вывода для if: расхождение видов в нём только заметка
    cond = stmt.cond
    try:
        diamond(infer_quant(cond.left, tau, sigma), infer_quant(cond.right, tau, sigma))
    except QuantlintError as e:
        return replace(
            Diagnostic.from_error(e, Phase.QUANT, cond.span, Severity.INFO),
            code=GUARD_MISMATCH,
            span=cond.span,
        )
    return None


def check_quant_stmts(stmts: Sequence[Statement], tau: QuantEnv, sigma: FunEnv) -> QuantVerdict:
    """
    Последовательная проверка операторов с протаскиванием τ.

    В условии ветвь then проверяется в τ и даёт τ1, ветвь else - в τ1 и даёт τ2.
    Останавливается на первом неудачном операторе.
    """
    initial = tau
    notes: List[Diagnostic] = []

    for stmt in stmts:
        if isinstance(stmt, Assign):
            try:
                result = check_assignment(stmt, tau, sigma)
            except QuantlintError as e:
                return QuantFail([Diagnostic.from_error(e, Phase.QUANT, stmt.span)], tau, initial, notes)
            if isinstance(result, Fail):
                return QuantFail([_fail_diagnostic(result)], tau, initial, notes)
            tau = result.env
            continue

        note = _guard_note(stmt, tau, sigma)
        if note:
            notes.append(note)

        then_verdict = check_quant_stmts(stmt.then_branch, tau, sigma)
        notes.extend(then_verdict.notes)
        if not then_verdict.ok:
            return QuantFail(then_verdict.diagnostics, then_verdict.env, initial, notes)

        else_verdict = check_quant_stmts(stmt.else_branch, then_verdict.env, sigma)
        notes.extend(else_verdict.notes)
        notes.extend(_divergence_notes(stmt, tau, then_verdict.env, sigma))
        if not else_verdict.ok:
            return QuantFail(else_verdict.diagnostics, else_verdict.env, initial, notes)

        tau = else_verdict.env

    return QuantSucceed(tau, initial, notes)


def _placeholder(qn: QuantName) -> QuantName:
    # `?q` не может быть идентификатором в исходном тексте, поэтому совпасть
    # с ним способно только это же имя
    if isinstance(qn, Quantvar):
        return Named(f"?{qn.id}")
    return qn


def check_function_decl(decl: FunctionDecl, sigma: FunEnv) -> QuantName:
    """
    Проверяет тело функции один раз при объявлении.

    Переменные вида обобщённой функции заменяются жёсткими именами `?q`,
    так что тело должно быть корректно при любой их подстановке.
    """
    tau = QuantEnv({p.var: _placeholder(p.quant) for p in decl.params})
    body = infer_quant(decl.body, tau, sigma)
    declared = _placeholder(decl.return_quant)
    try:
        return diamond(declared, body)
    except QuantityMismatch:
        raise ReturnMismatch(decl.name, declared, body, decl.body.span)


def initial_quant_env(p: Program) -> QuantEnv:
    return QuantEnv({d.var: d.quant for d in p.variables})


@logging(with_params=False)
def check_quant_program(p: Program) -> QuantVerdict:
    """
    Проверка видов величин для всей программы.

    τ строится по аннотациям объявлений, σ - по функциям в порядке объявления
    (функция видит только объявленные выше). Затем проверяются операторы.
    """
    logger = get_logger()

    tau = initial_quant_env(p)
    sigma: Dict[str, FunctionDecl] = {}

    for decl in p.functions:
        try:
            check_function_decl(decl, sigma)
        except QuantlintError as e:
            logger.info(f"Функция {decl.name} не прошла проверку видов: [{e.code}] {e.message}")
            return QuantFail([Diagnostic.from_error(e, Phase.QUANT, decl.span)], tau, tau)
        sigma[decl.name] = decl

    verdict = check_quant_stmts(p.stmts, tau, sigma)

    if verdict.ok:
        logger.info(f"Виды величин: успех, уточнено переменных {len(verdict.promotions)}")
    else:
        logger.info(f"Виды величин: отказ, диагностик {len(verdict.diagnostics)}")
    return verdict
