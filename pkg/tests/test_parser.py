from fractions import Fraction
from pathlib import Path

import pytest

from quantlint.errors import DuplicateDeclaration, ParseError
from quantlint.models import (
    NONAME, Add, Assign, Call, Declaration, Div, FunctionDecl, If, Mul, Named, Quantvar,
    ScalarMul, Span, Sub, Var,
)
from quantlint.models.program import walk
from quantlint.syntax import parse, pretty, tokenize

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*/*.uq"))


def _first_expr(source: str):
    return parse(source).stmts[0].expr


class TestParse:
    def test_minimal_program(self):
        program = parse("begin in end")
        assert program.decls == ()
        assert program.stmts == ()

    def test_addtq_listing(self, load_program):
        program = load_program("listings/addtq_named.uq")
        assert len(program.variables) == 3
        assert len(program.functions) == 1
        assert len(program.stmts) == 1

        addtq = program.functions[0]
        assert addtq.name == "addtq"
        assert [p.var for p in addtq.params] == ["x", "y"]
        assert all(p.quant == Named("T") and p.unit == "N * m" for p in addtq.params)
        assert addtq.return_quant == Named("T")
        assert addtq.body == Add(Var("x"), Var("y"))

        stmt = program.stmts[0]
        assert stmt == Assign("nt", ScalarMul(Fraction(2), Call("addtq", (Var("t1"), Var("t2")))))

    def test_missing_unit(self):
        with pytest.raises(ParseError) as info:
            parse("begin x : float of end")
        assert info.value.span == Span(1, 20, 1, 23)
        assert "единица измерения" in info.value.expected

    def test_declaration_defaults_to_noname(self):
        decl = parse("begin x : float of m in end").decls[0]
        assert decl == Declaration("x", "m", NONAME)

    def test_unit_text_is_canonical(self):
        program = parse("begin v : float of m*s^-1; r : float of m^( 1/2 )*(kg/s) in end")
        assert [d.unit for d in program.variables] == ["m * s^-1", "m^(1 / 2) * (kg / s)"]

    def test_precedence(self):
        e = _first_expr("begin in x := a + b * c - d / e end")
        assert e == Sub(Add(Var("a"), Mul(Var("b"), Var("c"))), Div(Var("d"), Var("e")))

    def test_scalar_binds_to_next_factor(self):
        e = _first_expr("begin in x := 2 * x * y end")
        assert e == Mul(ScalarMul(Fraction(2), Var("x")), Var("y"))

    def test_literal_divisor_is_left_associative(self):
        e = _first_expr("begin in x := d / 2 * t end")
        assert e == Mul(ScalarMul(Fraction(1, 2), Var("d")), Var("t"))
        assert e.left.span == Span(1, 15, 1, 20)

    def test_literal_divisor_without_product(self):
        e = _first_expr("begin in x := a * b / 4 end")
        assert e == ScalarMul(Fraction(1, 4), Mul(Var("a"), Var("b")))

    def test_zero_divisor_rejected(self):
        with pytest.raises(ParseError):
            parse("begin in x := d / 0 end")

    def test_decimal_scalar_is_exact(self):
        e = _first_expr("begin in x := 0.1 * x end")
        assert e.scalar == Fraction(1, 10)

    def test_bare_literal_rejected(self):
        with pytest.raises(ParseError) as info:
            parse("begin in x := 2 + x end")
        assert info.value.expected == ("'*'",)

    def test_if_statement(self):
        program = parse("begin in if a < b then x := a else x := b; y := b end end")
        stmt = program.stmts[0]
        assert isinstance(stmt, If)
        assert stmt.cond.op == "<"
        assert len(stmt.then_branch) == 1
        assert len(stmt.else_branch) == 2

    def test_generic_signature(self, load_program):
        add = load_program("listings/add_generic.uq").functions[0]
        assert isinstance(add, FunctionDecl)
        assert add.is_generic
        assert add.return_quant == Quantvar("q")
        assert not add.returns_named

    def test_function_body_keyword(self):
        with_is = parse("begin fun f(x : m) : m is x in end")
        with_eq = parse("begin fun f(x : m) : m = x in end")
        assert with_is == with_eq

    def test_comments_ignored(self):
        program = parse("-- заголовок\nbegin -- начало\n x : float of m -- длина\nin end")
        assert len(program.decls) == 1


class TestParseErrors:
    def test_duplicate_variable(self):
        with pytest.raises(DuplicateDeclaration) as info:
            parse("begin x : float of m; x : float of s in end")
        assert info.value.code == "DUPLICATE-DECL"

    def test_duplicate_function(self):
        with pytest.raises(DuplicateDeclaration):
            parse("begin fun f(x : m) : m = x; fun f(y : m) : m = y in end")

    def test_duplicate_parameter(self):
        with pytest.raises(DuplicateDeclaration):
            parse("begin fun f(x : m, x : m) : m = x in end")

    def test_quantvar_outside_signature(self):
        with pytest.raises(ParseError):
            parse("begin x : float of m named ?q in end")

    def test_return_quantvar_must_be_bound(self):
        with pytest.raises(ParseError):
            parse("begin fun f(x : m named ?a) : m named ?b = x in end")

    def test_missing_else(self):
        with pytest.raises(ParseError):
            parse("begin in if a < b then x := a end end")

    def test_trailing_input(self):
        with pytest.raises(ParseError):
            parse("begin in end end")

    def test_invalid_character(self):
        with pytest.raises(ParseError) as info:
            parse("begin in x := a $ b end")
        assert info.value.span == Span(1, 17, 1, 18)

    def test_keyword_is_not_identifier(self):
        with pytest.raises(ParseError):
            parse("begin end : float of m in end")


class TestLexer:
    def test_suppressions_collected(self):
        source = "begin\nin\n-- quantlint: allow DISC-MUL, DISC-NONAME-ASSIGN\nx := a * b\nend"
        _, suppressions = tokenize(source)
        assert suppressions == {3: frozenset({"DISC-MUL", "DISC-NONAME-ASSIGN"})}

    def test_suppressions_ignored_by_equality(self):
        plain = parse("begin in x := a end")
        annotated = parse("begin in\n-- quantlint: allow DISC-MUL\nx := a end")
        assert plain == annotated
        assert annotated.is_suppressed("DISC-MUL", annotated.stmts[0].span)

    def test_two_char_operators(self):
        tokens, _ = tokenize("x := a <= b >= c")
        assert [t.text for t in tokens if t.kind == "OP"] == [":=", "<=", ">="]


class TestPretty:
    def test_minimal_round_trip(self):
        program = parse("begin in end")
        assert parse(pretty(program)) == program

    def test_normalizes_spacing(self):
        text = pretty(parse("begin t : float of N*m in t:=2*t end"))
        assert "t := 2 * t" in text
        assert "t : float of N * m" in text

    def test_parenthesizes_where_needed(self):
        text = pretty(parse("begin in x := (a + b) * (c - d) - (e - f) end"))
        assert "x := (a + b) * (c - d) - (e - f)" in text

    def test_scalar_of_product_keeps_parentheses(self):
        program = parse("begin in x := 0.5 * (i / (t * t)) end")
        assert "0.5 * (i / (t * t))" in pretty(program)
        assert parse(pretty(program)) == program

    @pytest.mark.parametrize("source,text", [
        ("x := d / 3 * t", "x := d / 3 * t"),
        ("x := d / 2 * t", "x := 0.5 * d * t"),
        ("x := a / (b / 3)", "x := a / (b / 3)"),
        ("x := 2 * (b / 3)", "x := 2 * (b / 3)"),
        ("x := (a + b) / 3", "x := (a + b) / 3"),
    ])
    def test_literal_divisor_round_trip(self, source, text):
        program = parse(f"begin in {source} end")
        assert text in pretty(program)
        assert parse(pretty(program)) == program

    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
    def test_corpus_round_trip(self, path):
        program = parse(path.read_text(encoding='utf-8'))
        assert parse(pretty(program)) == program

    def test_pretty_is_idempotent(self, read_corpus):
        text = pretty(parse(read_corpus("synthetic/s20_nested_if.uq")))
        assert pretty(parse(text)) == text


class TestSpans:
    @pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
    def test_parent_spans_contain_children(self, path):
        source = path.read_text(encoding='utf-8')
        lines = source.splitlines()
        program = parse(source)

        def check(node):
            for child in _children_with_spans(node):
                assert node.span.contains(child.span), (node, child)
                check(child)

        for node in walk(program):
            if getattr(node, "span", None) is None:
                continue
            assert 1 <= node.span.start_line <= node.span.end_line <= len(lines)
        check(program)

    def test_node_spans(self, load_program):
        stmt = load_program("listings/kinetic_inline.uq").stmts[0]
        assert stmt.span == Span(7, 5, 7, 27)
        assert stmt.expr.span == Span(7, 10, 7, 27)


def _children_with_spans(node):
    from quantlint.models.program import children
    return [c for c in children(node) if getattr(c, "span", None) is not None]
