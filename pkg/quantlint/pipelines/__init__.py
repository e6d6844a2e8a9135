from .dim_check import build_dim_env, infer_dims, check_dims_program
from .quant_check import infer_quant, check_assignment, check_quant_stmts, invoke_function, unify_quantvars, check_quant_program
from .discipline import lint_discipline
from .run_check import run_check, main

__all__ = [
    "build_dim_env",
    "infer_dims",
    "check_dims_program",
    "infer_quant",
    "check_assignment",
    "check_quant_stmts",
    "invoke_function",
    "unify_quantvars",
    "check_quant_program",
    "lint_discipline",
    "run_check",
    "main",
]
