from .span import Span
from .quantity import Named, Noname, Quantvar, NONAME, QuantName, Succeed, Fail, AssignResult
from .dims import Dims, UnitSpec, AffineConversion, BASE_DIMENSIONS
from .env import DimEnv, QuantEnv
from .program import (
    Program, Declaration, FunctionDecl, Param, Assign, If, Compare,
    Var, Add, Sub, ScalarMul, Mul, Div, Call, UnitExpression, Statement,
)
from .diagnostic import Diagnostic, Phase, Severity
from .verdict import DimValid, DimFail, DimVerdict, QuantSucceed, QuantFail, QuantVerdict
from .lint_warning import LintWarning, DISC_MUL, DISC_NONAME_ASSIGN
from .report import FileReport

__all__ = [
    "Span",
    "Named",
    "Noname",
    "Quantvar",
    "NONAME",
    "QuantName",
    "Succeed",
    "Fail",
    "AssignResult",
    "Dims",
    "UnitSpec",
    "AffineConversion",
    "BASE_DIMENSIONS",
    "DimEnv",
    "QuantEnv",
    "Program",
    "Declaration",
    "FunctionDecl",
    "Param",
    "Assign",
    "If",
    "Compare",
    "Var",
    "Add",
    "Sub",
    "ScalarMul",
    "Mul",
    "Div",
    "Call",
    "UnitExpression",
    "Statement",
    "Diagnostic",
    "Phase",
    "Severity",
    "DimValid",
    "DimFail",
    "DimVerdict",
    "QuantSucceed",
    "QuantFail",
    "QuantVerdict",
    "LintWarning",
    "DISC_MUL",
    "DISC_NONAME_ASSIGN",
    "FileReport",
]
