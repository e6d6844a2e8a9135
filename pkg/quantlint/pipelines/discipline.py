"""
Дисциплина программирования с величинами.

Умножение и деление допустимы только в телах функций, объявленных с
именованным результатом: тогда вид величины в основном блоке всегда известен.
Проход только сообщает и на вердикты проверок не влияет.
"""
from typing import Iterator, List, Sequence

from quantlint import get_logger
from quantlint.algebra.quantity import assign_op
from quantlint.errors import QuantlintError
from quantlint.models.diagnostic import Severity
from quantlint.models.env import QuantEnv
from quantlint.models.lint_warning import DISC_MUL, DISC_NONAME_ASSIGN, LintWarning
from quantlint.models.program import MULTIPLICATIVE, Assign, Program, Statement, UnitExpression, children
from quantlint.models.quantity import Named, Noname, Succeed
from quantlint.pipelines.quant_check import infer_quant, initial_quant_env
from quantlint.utils import logging


def _maximal_products(node) -> Iterator[UnitExpression]:
    if isinstance(node, MULTIPLICATIVE):
        yield node
        return
    for child in children(node):
        yield from _maximal_products(child)


def _stmt_expressions(stmts: Sequence[Statement]) -> Iterator[UnitExpression]:
    for stmt in stmts:
        if isinstance(stmt, Assign):
            yield stmt.expr
        else:
            yield stmt.cond.left
            yield stmt.cond.right
            yield from _stmt_expressions(stmt.then_branch)
            yield from _stmt_expressions(stmt.else_branch)


class _Lint:
    def __init__(self, program: Program, severity: Severity) -> None:
        self.program = program
        self.severity = severity
        self.sigma = {f.name: f for f in program.functions}
        self.warnings: List[LintWarning] = []

    def emit(self, rule: str, node, message: str) -> None:
        if self.program.is_suppressed(rule, node.span):
            return
        self.warnings.append(LintWarning(node.span, rule, message, self.severity))

    def check_products(self) -> None:
        for decl in self.program.functions:
            if decl.returns_named:
                continue
            for product in _maximal_products(decl.body):
                self.emit(DISC_MUL, product, (
                    f"умножение в теле функции '{decl.name}' без именованного результата: "
                    f"вид величины теряется"
                ))

        for expr in _stmt_expressions(self.program.stmts):
            for product in _maximal_products(expr):
                self.emit(DISC_MUL, product, (
                    "умножение в основном блоке: вынесите выражение в функцию "
                    "с именованным результатом"
                ))

    def check_assignments(self, stmts: Sequence[Statement], tau: QuantEnv) -> QuantEnv:
        # τ протаскивается так же, как в проверке видов, но ошибки просто пропускаются
        for stmt in stmts:
            if not isinstance(stmt, Assign):
                tau = self.check_assignments(stmt.then_branch, tau)
                tau = self.check_assignments(stmt.else_branch, tau)
                continue

            if stmt.var not in tau:
                continue
            try:
                found = infer_quant(stmt.expr, tau, self.sigma)
            except QuantlintError:
                continue

            target = tau[stmt.var]
            if isinstance(target, Named) and isinstance(found, Noname):
                self.emit(DISC_NONAME_ASSIGN, stmt, (
                    f"переменной '{stmt.var}' вида {target} присваивается значение без вида: "
                    f"правильность величины не проверяется"
                ))

            result = assign_op(stmt.var, target, found, tau)
            if isinstance(result, Succeed):
                tau = result.env
        return tau


@logging(with_params=False)
def lint_discipline(p: Program, strict: bool = False) -> List[LintWarning]:
    """
    Правила:
        DISC-MUL - каждое максимальное произведение или частное вне функции
            с именованным результатом (умножение на литерал не считается);
        DISC-NONAME-ASSIGN - присваивание значения без вида переменной с видом.

    В строгом режиме предупреждения становятся ошибками. Правило подавляется
    комментарием `-- quantlint: allow RULE` на предыдущей строке.
    """
    lint = _Lint(p, Severity.ERROR if strict else Severity.WARNING)
    lint.check_products()
    lint.check_assignments(p.stmts, initial_quant_env(p))

    warnings = sorted(lint.warnings, key=lambda w: (w.span.start_line, w.span.start_col, w.rule))
    get_logger().info(f"Дисциплина: предупреждений {len(warnings)} (strict={strict})")
    return warnings
