from .lexer import tokenize, Token
from .parser import parse
from .pretty import pretty, pretty_expr

__all__ = [
    "tokenize",
    "Token",
    "parse",
    "pretty",
    "pretty_expr",
]
