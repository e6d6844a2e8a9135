"""
Рекурсивный спуск для языка программ с единицами измерения.

    program ::= 'begin' decls 'in' stmts 'end'

Каждый узел AST получает Span; первая же ошибка прерывает разбор.
"""
from __future__ import annotations
from fractions import Fraction
from typing import Iterable, List, Optional, Set, Tuple, Union

from quantlint.errors import DuplicateDeclaration, ParseError
from quantlint.models.program import (
    COMPARE_OPS, Add, Assign, Call, Compare, Declaration, Div, FunctionDecl, If, Mul,
    Param, Program, ScalarMul, Statement, Sub, UnitExpression, Var,
)
from quantlint.models.quantity import NONAME, Named, QuantName, Quantvar
from quantlint.models.span import Span
from quantlint.syntax.lexer import Token, tokenize


class Parser:
    def __init__(self, source: str) -> None:
        self.tokens, self.suppressions = tokenize(source)
        self.pos = 0
        self._last: Optional[Token] = None

    # --- служебное ---------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        token = self.current
        if token.kind != "EOF":
            self.pos += 1
        self._last = token
        return token

    def _error(self, expected: Iterable[str], what: str = "") -> ParseError:
        expected = tuple(expected)
        wanted = ", ".join(sorted(set(expected)))
        found = self.current.describe()
        message = what or f"ожидалось {wanted}, найдено {found}"
        return ParseError(message, self.current.span, expected)

    def _expect_op(self, text: str) -> Token:
        if not self.current.is_op(text):
            raise self._error([f"'{text}'"])
        return self._advance()

    def _expect_keyword(self, text: str) -> Token:
        if not self.current.is_keyword(text):
            raise self._error([f"'{text}'"])
        return self._advance()

    def _expect_ident(self, what: str = "идентификатор") -> Token:
        if self.current.kind != "IDENT":
            raise self._error([what])
        return self._advance()

    def _span_from(self, start: Token) -> Span:
        return Span(start.span.start_line, start.span.start_col, self._last.span.end_line, self._last.span.end_col)

    # --- программа ---------------------------------------------------------

    def parse_program(self) -> Program:
        start = self._expect_keyword("begin")
        decls = self.parse_decls()
        self._expect_keyword("in")
        stmts = self.parse_stmts(("end",))
        self._expect_keyword("end")
        if self.current.kind != "EOF":
            raise self._error(["конец файла"])
        return Program(tuple(decls), tuple(stmts), self._span_from(start), dict(self.suppressions))

    def parse_decls(self) -> List[Union[Declaration, FunctionDecl]]:
        decls: List[Union[Declaration, FunctionDecl]] = []
        seen: Set[str] = set()

        if self.current.is_keyword("in"):
            return decls

        while True:
            decl = self.parse_function() if self.current.is_keyword("fun") else self.parse_declaration()
            name = decl.name if isinstance(decl, FunctionDecl) else decl.var
            if name in seen:
                raise DuplicateDeclaration(name, decl.span)
            seen.add(name)
            decls.append(decl)

            if not self.current.is_op(";"):
                break
            self._advance()
            if self.current.is_keyword("in"):
                break
        return decls

    def parse_declaration(self) -> Declaration:
        start = self._expect_ident("идентификатор или 'fun'")
        self._expect_op(":")
        self._expect_keyword("float")
        self._expect_keyword("of")
        unit = self.parse_unit()
        quant = self.parse_quant_annotation(allow_quantvar=False)
        return Declaration(start.text, unit, quant, self._span_from(start))

    def parse_function(self) -> FunctionDecl:
        start = self._expect_keyword("fun")
        name = self._expect_ident("имя функции").text
        self._expect_op("(")

        params: List[Param] = []
        if not self.current.is_op(")"):
            params.append(self.parse_param())
            while self.current.is_op(","):
                self._advance()
                params.append(self.parse_param())
        self._expect_op(")")

        seen: Set[str] = set()
        for param in params:
            if param.var in seen:
                raise DuplicateDeclaration(param.var, param.span)
            seen.add(param.var)

        self._expect_op(":")
        return_unit = self.parse_unit()
        return_start = self.current
        return_quant = self.parse_quant_annotation(allow_quantvar=True)
        if isinstance(return_quant, Quantvar):
            param_vars = {p.quant for p in params if isinstance(p.quant, Quantvar)}
            if return_quant not in param_vars:
                raise ParseError(
                    f"переменная вида ?{return_quant.id} в результате не встречается среди параметров",
                    self._span_from(return_start),
                )

        if self.current.is_op("=") or self.current.is_keyword("is"):
            self._advance()
        else:
            raise self._error(["'='", "'is'", "'named'", "'*'", "'/'"])

        body = self.parse_uexp()
        return FunctionDecl(name, tuple(params), return_unit, return_quant, body, self._span_from(start))

    def parse_param(self) -> Param:
        start = self._expect_ident("имя параметра")
        self._expect_op(":")
        unit = self.parse_unit()
        quant = self.parse_quant_annotation(allow_quantvar=True)
        return Param(start.text, unit, quant, self._span_from(start))

    def parse_quant_annotation(self, allow_quantvar: bool) -> QuantName:
        if not self.current.is_keyword("named"):
            return NONAME
        self._advance()

        if self.current.is_op("?"):
            question = self._advance()
            ident = self._expect_ident("имя переменной вида")
            if not allow_quantvar:
                raise ParseError(
                    "переменные вида `named ?q` допустимы только в сигнатурах функций",
                    self._span_from(question),
                )
            return Quantvar(ident.text)

        return Named(self._expect_ident("имя вида величины").text)

    # --- выражения единиц (в объявлениях) ----------------------------------

    def parse_unit(self) -> str:
        """Разбирает выражение единиц и возвращает его канонический текст."""
        text = self._unit_factor()
        while self.current.is_op("*") or self.current.is_op("/"):
            op = self._advance().text
            text += f" {op} " + self._unit_factor()
        return text

    def _unit_factor(self) -> str:
        token = self.current
        if token.kind == "IDENT":
            self._advance()
            text = token.text
        elif token.kind == "NUMBER" and token.text == "1":
            self._advance()
            text = "1"
        elif token.is_op("("):
            self._advance()
            text = "(" + self.parse_unit() + ")"
            self._expect_op(")")
        else:
            raise self._error(["единица измерения"])

        if self.current.is_op("^"):
            self._advance()
            text += "^" + self._unit_power()
        return text

    def _unit_int(self) -> str:
        sign = ""
        if self.current.is_op("-"):
            self._advance()
            sign = "-"
        token = self.current
        if token.kind != "NUMBER" or "." in token.text:
            raise self._error(["целый показатель степени"])
        self._advance()
        return sign + token.text

    def _unit_power(self) -> str:
        if not self.current.is_op("("):
            return self._unit_int()
        self._advance()
        text = self._unit_int()
        if self.current.is_op("/"):
            self._advance()
            text += " / " + self._unit_int()
        self._expect_op(")")
        return f"({text})"

    # --- операторы ---------------------------------------------------------

    def parse_stmts(self, terminators: Tuple[str, ...]) -> List[Statement]:
        stmts: List[Statement] = []

        def at_end() -> bool:
            return any(self.current.is_keyword(t) for t in terminators)

        if at_end():
            return stmts

        while True:
            stmts.append(self.parse_stmt())
            if not self.current.is_op(";"):
                break
            self._advance()
            if at_end():
                break

        if not at_end():
            raise self._error([f"'{t}'" for t in terminators] + ["';'"])
        return stmts

    def parse_stmt(self) -> Statement:
        if self.current.is_keyword("if"):
            return self.parse_if()

        start = self._expect_ident("оператор")
        self._expect_op(":=")
        expr = self.parse_uexp()
        return Assign(start.text, expr, self._span_from(start))

    def parse_if(self) -> If:
        start = self._expect_keyword("if")
        cond = self.parse_bexp()
        self._expect_keyword("then")
        then_branch = self.parse_stmts(("else",))
        self._expect_keyword("else")
        else_branch = self.parse_stmts(("end",))
        self._expect_keyword("end")
        return If(cond, tuple(then_branch), tuple(else_branch), self._span_from(start))

    def parse_bexp(self) -> Compare:
        start = self.current
        left = self.parse_uexp()
        if not (self.current.kind == "OP" and self.current.text in COMPARE_OPS):
            raise self._error([f"'{op}'" for op in COMPARE_OPS])
        op = self._advance().text
        right = self.parse_uexp()
        return Compare(op, left, right, self._span_from(start))

    # --- выражения ---------------------------------------------------------

    def parse_uexp(self) -> UnitExpression:
        start = self.current
        node = self.parse_term()
        while self.current.is_op("+") or self.current.is_op("-"):
            op = self._advance().text
            right = self.parse_term()
            node = (Add if op == "+" else Sub)(node, right, self._span_from(start))
        return node

    def parse_term(self) -> UnitExpression:
        start = self.current
        node = self.parse_unary()
        while self.current.is_op("*") or self.current.is_op("/"):
            op = self._advance().text
            if op == "/" and self.current.kind == "NUMBER":
                # `e / r` делит уже накопленный множитель: d / 2 * t = (d / 2) * t
                divisor = Fraction(self.current.text)
                if divisor == 0:
                    raise self._error(["ненулевое число"], "деление на нулевой литерал")
                self._advance()
                node = ScalarMul(1 / divisor, node, self._span_from(start))
                continue
            right = self.parse_unary()
            node = (Mul if op == "*" else Div)(node, right, self._span_from(start))
        return node

    def parse_unary(self) -> UnitExpression:
        if self.current.kind != "NUMBER":
            return self.parse_primary()

        start = self._advance()
        if not self.current.is_op("*"):
            raise self._error(["'*'"], "числовой литерал допустим только как множитель `r * выражение`")
        self._advance()
        operand = self.parse_unary()
        return ScalarMul(Fraction(start.text), operand, self._span_from(start))

    def parse_primary(self) -> UnitExpression:
        token = self.current
        if token.is_op("("):
            self._advance()
            node = self.parse_uexp()
            self._expect_op(")")
            return node

        if token.kind != "IDENT":
            raise self._error(["идентификатор", "число", "'('"])
        self._advance()

        if not self.current.is_op("("):
            return Var(token.text, token.span)

        self._advance()
        args: List[UnitExpression] = []
        if not self.current.is_op(")"):
            args.append(self.parse_uexp())
            while self.current.is_op(","):
                self._advance()
                args.append(self.parse_uexp())
        self._expect_op(")")
        return Call(token.text, tuple(args), self._span_from(token))


def parse(source: str) -> Program:
    """
    Разбирает исходный текст программы.

    Raises:
        ParseError: первая синтаксическая ошибка с позицией и множеством ожидаемых токенов
        DuplicateDeclaration: повторное объявление переменной, функции или параметра
    """
    return Parser(source).parse_program()
