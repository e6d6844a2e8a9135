import itertools
from pathlib import Path

import pytest

from quantlint.algebra import diamond
from quantlint.errors import (
    ArityMismatch, ParameterMismatch, QuantityMismatch, ReturnMismatch, UnifyFail, UnknownFunction,
)
from quantlint.models import (
    NONAME, Add, Call, FunctionDecl, Named, Param, QuantEnv, QuantFail, QuantSucceed, Quantvar, Span, Var,
)
from quantlint.models.quantity import Noname
from quantlint.pipelines.quant_check import (
    BRANCH_DIVERGENCE, GUARD_MISMATCH, check_quant_program, check_quant_stmts, infer_quant,
    initial_quant_env, invoke_function, unify_quantvars,
)
from quantlint.syntax import parse

T, W = Named("T"), Named("W")
NAMES = [T, W, Named("MI"), NONAME]

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*/*.uq"))


def _generic_add(left_var="q", right_var="q") -> FunctionDecl:
    return FunctionDecl(
        name="add",
        params=(Param("x", "m", Quantvar(left_var)), Param("y", "m", Quantvar(right_var))),
        return_unit="m",
        return_quant=Quantvar(left_var),
        body=Add(Var("x"), Var("y")),
    )


def _diamond_or_none(a, b):
    try:
        return diamond(a, b)
    except QuantityMismatch:
        return None


class TestListings:
    def test_named_parameters_accept_torques(self, load_program):
        verdict = check_quant_program(load_program("listings/addtq_named.uq"))
        assert isinstance(verdict, QuantSucceed)
        assert verdict.promotions == {}

    def test_work_passed_as_torque(self, load_program):
        verdict = check_quant_program(load_program("listings/addtq_type1.uq"))
        assert isinstance(verdict, QuantFail)
        [diagnostic] = verdict.diagnostics
        assert diagnostic.code == "KOQ-TYPE1"
        assert diagnostic.span == Span(8, 24, 8, 25)
        assert diagnostic.related["names"] == ["Named T", "Named W"]

    def test_unnamed_parameters_fail_in_body(self, load_program):
        verdict = check_quant_program(load_program("listings/addtq_noname.uq"))
        [diagnostic] = verdict.diagnostics
        assert diagnostic.code == "KOQ-MISMATCH"
        assert diagnostic.span == Span(6, 47, 6, 52)
        assert diagnostic.related["call_sites"] == ["8:15-8:26"]

    def test_inline_kinetic_energy_is_accepted(self, load_program):
        # произведение теряет вид, а Noname совместим с Named T
        verdict = check_quant_program(load_program("listings/kinetic_inline.uq"))
        assert verdict.ok
        assert verdict.promotions == {}

    def test_kinetic_energy_function(self, load_program):
        assert check_quant_program(load_program("listings/kinetic_function.uq")).ok

    def test_noname_promoted_by_assignment(self, load_program):
        verdict = check_quant_program(load_program("listings/promote.uq"))
        assert verdict.promotions == {"t1": T}

    def test_generic_add(self, load_program):
        assert check_quant_program(load_program("listings/add_generic.uq")).ok


class TestInvokeFunction:
    sigma = {
        "addtq": FunctionDecl(
            name="addtq",
            params=(Param("x", "N * m", T), Param("y", "N * m", T)),
            return_unit="N * m",
            return_quant=T,
            body=Add(Var("x"), Var("y")),
        ),
        "add": _generic_add(),
    }
    tau = QuantEnv({"t": T, "w": W, "n": NONAME})

    def test_named_result(self):
        assert invoke_function("addtq", [Var("t"), Var("t")], self.tau, self.sigma) == T

    def test_noname_argument_is_accepted(self):
        assert invoke_function("addtq", [Var("n"), Var("t")], self.tau, self.sigma) == T

    def test_parameter_mismatch_located_at_argument(self):
        arg = Var("w", span=Span(1, 10, 1, 11))
        with pytest.raises(ParameterMismatch) as info:
            invoke_function("addtq", [Var("t"), arg], self.tau, self.sigma)
        assert info.value.span == arg.span
        assert info.value.param == "y"

    def test_unknown_function(self):
        with pytest.raises(UnknownFunction):
            invoke_function("nope", [], self.tau, self.sigma)

    def test_arity(self):
        with pytest.raises(ArityMismatch) as info:
            invoke_function("addtq", [Var("t")], self.tau, self.sigma)
        assert (info.value.expected, info.value.found) == (2, 1)

    def test_generic_takes_argument_name(self):
        assert invoke_function("add", [Var("w"), Var("w")], self.tau, self.sigma) == W

    def test_generic_casts_noname_up(self):
        assert invoke_function("add", [Var("n"), Var("t")], self.tau, self.sigma) == T

    def test_generic_all_noname(self):
        assert invoke_function("add", [Var("n"), Var("n")], self.tau, self.sigma) == NONAME

    def test_generic_conflict(self):
        call_span = Span(3, 1, 3, 10)
        with pytest.raises(UnifyFail) as info:
            invoke_function("add", [Var("t"), Var("w")], self.tau, self.sigma, call_span)
        assert info.value.span == call_span
        assert info.value.quantvar == "q"

    def test_call_inside_expression(self):
        e = Add(Call("addtq", (Var("t"), Var("n"))), Var("n"))
        assert infer_quant(e, self.tau, self.sigma) == T

    def test_tau_is_not_changed_by_call(self):
        before = dict(self.tau)
        invoke_function("addtq", [Var("n"), Var("t")], self.tau, self.sigma)
        assert dict(self.tau) == before


class TestUnify:
    @pytest.mark.parametrize("a,b", list(itertools.product(NAMES, repeat=2)))
    def test_shared_quantvar(self, a, b):
        expected = _diamond_or_none(a, b)
        if expected is None:
            with pytest.raises(UnifyFail):
                unify_quantvars(_generic_add(), [a, b])
        else:
            assert unify_quantvars(_generic_add(), [a, b]) == {"q": expected}

    @pytest.mark.parametrize("a,b", list(itertools.product(NAMES, repeat=2)))
    def test_independent_quantvars_never_fail(self, a, b):
        assert unify_quantvars(_generic_add("p", "q"), [a, b]) == {"p": a, "q": b}

    def test_plain_parameters_ignored(self):
        decl = FunctionDecl(
            name="scale",
            params=(Param("x", "m", Quantvar("q")), Param("k", "1", NONAME), Param("y", "m", Quantvar("q"))),
            return_unit="m",
            return_quant=Quantvar("q"),
            body=Var("x"),
        )
        assert unify_quantvars(decl, [NONAME, W, T]) == {"q": T}


class TestStatements:
    def test_if_threads_then_into_else(self, load_program):
        verdict = check_quant_program(load_program("synthetic/s04_if_promote.uq"))
        assert verdict.ok
        assert verdict.promotions == {"a": Named("Height")}
        assert verdict.notes == []

    def test_branch_divergence(self, load_program):
        verdict = check_quant_program(load_program("synthetic/s05_branch_divergence.uq"))
        assert not verdict.ok
        [diagnostic] = verdict.diagnostics
        assert diagnostic.code == "KOQ-TYPE1"
        assert diagnostic.span == Span(9, 9, 9, 15)
        [note] = verdict.notes
        assert note.code == BRANCH_DIVERGENCE
        assert note.severity.value == "info"
        assert note.related["names"] == ["Named Height", "Named Width"]

    def test_nested_if(self, load_program):
        verdict = check_quant_program(load_program("synthetic/s20_nested_if.uq"))
        assert verdict.promotions == {"a": Named("Mass")}

    def test_guard_with_different_names_succeeds(self):
        program = parse(
            "begin t : float of N * m named Torque; w : float of J named Work in "
            "if t < w then t := t else w := w end end"
        )
        verdict = check_quant_program(program)
        assert verdict.ok
        assert verdict.diagnostics == []
        [note] = verdict.notes
        assert note.code == GUARD_MISMATCH
        assert note.severity.value == "info"
        assert note.span == program.stmts[0].cond.span

    def test_guard_with_same_names_has_no_note(self):
        program = parse(
            "begin a : float of m named A; n : float of m in "
            "if a < n then a := a else n := n end end"
        )
        verdict = check_quant_program(program)
        assert verdict.ok
        assert verdict.notes == []

    def test_stops_at_first_failure(self):
        program = parse(
            "begin a : float of m named A; b : float of m named B in "
            "a := b; b := a end"
        )
        verdict = check_quant_program(program)
        assert [d.code for d in verdict.diagnostics] == ["KOQ-TYPE1"]
        assert verdict.diagnostics[0].span == program.stmts[0].span

    def test_subtraction_keeps_name(self, load_program):
        assert check_quant_program(load_program("synthetic/s16_subtraction.uq")).ok

    def test_subtraction_mismatch(self, load_program):
        program = load_program("synthetic/s17_sub_mismatch.uq")
        [diagnostic] = check_quant_program(program).diagnostics
        assert diagnostic.code == "KOQ-MISMATCH"
        assert diagnostic.span == program.stmts[0].expr.span

    def test_nested_calls(self, load_program):
        assert check_quant_program(load_program("synthetic/s14_nested_calls.uq")).ok


class TestFunctionDeclarations:
    def test_generic_upcast(self, load_program):
        verdict = check_quant_program(load_program("synthetic/s06_generic_upcast.uq"))
        assert verdict.promotions == {"r": T}

    def test_generic_unify_fail(self, load_program):
        [diagnostic] = check_quant_program(load_program("synthetic/s07_generic_unify_fail.uq")).diagnostics
        assert diagnostic.code == "KOQ-UNIFY"
        assert diagnostic.span == Span(7, 10, 7, 19)

    def test_return_mismatch_at_declaration(self, load_program):
        [diagnostic] = check_quant_program(load_program("synthetic/s08_return_mismatch.uq")).diagnostics
        assert diagnostic.code == "KOQ-RETURN"
        assert diagnostic.span == Span(3, 48, 3, 49)

    def test_generic_body_is_checked_for_every_substitution(self):
        program = parse("begin fun bad(x : m named ?p, y : m named ?q) : m named ?p = x + y in end")
        [diagnostic] = check_quant_program(program).diagnostics
        assert diagnostic.code == "KOQ-MISMATCH"

    def test_generic_product_is_noname(self):
        program = parse("begin fun f(x : m named ?q, y : m) : m named ?q = x * y in end")
        assert check_quant_program(program).ok

    def test_return_mismatch_at_call(self):
        sigma = {"f": FunctionDecl("f", (Param("x", "m", NONAME),), "m", T, Var("x"))}
        with pytest.raises(ReturnMismatch):
            invoke_function("f", [Var("w")], QuantEnv({"w": W}), sigma)


class TestProperties:
    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
    def test_environment_only_gains_names(self, path):
        program = parse(path.read_text(encoding='utf-8'))
        verdict = check_quant_program(program)
        if not verdict.ok:
            return
        initial = initial_quant_env(program)
        assert set(verdict.env) == set(initial)
        for var, old in initial.items():
            new = verdict.env[var]
            assert new == old or (isinstance(old, Noname) and isinstance(new, Named))

    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
    def test_deterministic(self, path):
        program = parse(path.read_text(encoding='utf-8'))
        first, second = check_quant_program(program), check_quant_program(program)
        assert first.ok == second.ok
        assert first.diagnostics == second.diagnostics
        assert first.notes == second.notes

    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
    def test_rerun_from_result_is_stable(self, path):
        program = parse(path.read_text(encoding='utf-8'))
        verdict = check_quant_program(program)
        if not verdict.ok:
            return
        sigma = {f.name: f for f in program.functions}
        again = check_quant_stmts(program.stmts, verdict.env, sigma)
        assert again.ok
        assert again.env == verdict.env
