"""
Алгебра видов величин.

diamond - совместимость при сложении (Noname приводится вверх к Named),
triangle - умножение, всегда теряющее вид, assign_op - присваивание
с возможным уточнением окружения τ.
"""
from quantlint.errors import QuantityMismatch, UnresolvedQuantvar
from quantlint.models.env import QuantEnv
from quantlint.models.quantity import NONAME, AssignResult, Fail, Named, QuantName, Quantvar, Succeed


def _require_resolved(*names: QuantName) -> None:
    for qn in names:
        if isinstance(qn, Quantvar):
            raise UnresolvedQuantvar(qn)


def diamond(a: QuantName, b: QuantName) -> QuantName:
    _require_resolved(a, b)

    if isinstance(a, Named) and isinstance(b, Named):
        if a.name != b.name:
            raise QuantityMismatch(a, b)
        return a
    if isinstance(a, Named):
        return a
    if isinstance(b, Named):
        return b
    return NONAME


def triangle(a: QuantName, b: QuantName) -> QuantName:
    _require_resolved(a, b)
    return NONAME


def assign_op(target: str, lhs: QuantName, rhs: QuantName, env: QuantEnv) -> AssignResult:
    _require_resolved(lhs, rhs)

    if isinstance(lhs, Named) and isinstance(rhs, Named) and lhs.name != rhs.name:
        return Fail(code="KOQ-TYPE1", expected=lhs, found=rhs, target=target)
    if not isinstance(lhs, Named) and isinstance(rhs, Named):
        return Succeed(env.override(target, rhs))
    return Succeed(env)
