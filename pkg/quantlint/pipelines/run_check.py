"""
Проверка файлов программ: разбор, размерности, виды величин, дисциплина.

    python -m quantlint check [--json] [--strict-discipline] [--units FILE]
                              [--dump-env] [--keep-going] FILE...
"""
from __future__ import annotations
import argparse
import asyncio
from dataclasses import dataclass
import json
import sys
from typing import List, Optional, Sequence, TextIO

from quantlint import get_config, get_logger, logger_setup
from quantlint.algebra.units import UnitTable
from quantlint.clients.unit_overlay import load_unit_table
from quantlint.errors import ParseError, UnitError
from quantlint.models.diagnostic import Diagnostic, Phase
from quantlint.models.quantity import quant_to_dict
from quantlint.models.report import EXIT_OK, EXIT_PARSE_OR_IO, FileReport
from quantlint.models.span import Span
from quantlint.pipelines.discipline import lint_discipline
from quantlint.pipelines.dim_check import check_dims_program
from quantlint.pipelines.quant_check import check_quant_program, initial_quant_env
from quantlint.syntax.parser import parse
from quantlint.utils import logging

IO_ERROR = "IO-ERROR"


@dataclass(frozen=True)
class CheckOptions:
    table: UnitTable
    strict_discipline: bool = False
    gate_quant_on_dims: bool = True
    dump_env: bool = False


def check_source(source: str, file: str, options: CheckOptions) -> FileReport:
    """Прогоняет все проходы по тексту одной программы."""
    logger = get_logger()
    verdicts = {"parse": "ok", "dims": "skipped", "quant": "skipped", "lint": "skipped"}

    try:
        program = parse(source)
    except ParseError as e:
        logger.info(f"{file}: ошибка разбора [{e.code}] {e.message}")
        verdicts["parse"] = "error"
        return FileReport(file, verdicts, [Diagnostic.from_error(e, Phase.PARSE).in_file(file)])

    diagnostics: List[Diagnostic] = []

    dims = check_dims_program(program, options.table)
    verdicts["dims"] = "valid" if dims.ok else "fail"
    diagnostics += dims.diagnostics + dims.notes

    tau = initial_quant_env(program)
    promotions = {}
    if dims.ok or not options.gate_quant_on_dims:
        quant = check_quant_program(program)
        verdicts["quant"] = "succeed" if quant.ok else "fail"
        diagnostics += quant.diagnostics + quant.notes
        if quant.ok:
            promotions = {var: quant_to_dict(qn) for var, qn in quant.promotions.items()}
        if quant.env is not None:
            tau = quant.env

    warnings = lint_discipline(program, options.strict_discipline)
    if not warnings:
        verdicts["lint"] = "clean"
    else:
        verdicts["lint"] = "errors" if options.strict_discipline else "warnings"
    diagnostics += [w.to_diagnostic() for w in warnings]

    env = None
    if options.dump_env:
        env = {
            "rho": {var: dims.env[var].to_list() for var in dims.env},
            "tau": {var: quant_to_dict(qn) for var, qn in tau.items()},
        }

    diagnostics = sorted((d.in_file(file) for d in diagnostics), key=lambda d: d.sort_key)
    return FileReport(file, verdicts, diagnostics, promotions, env)


def check_file(path: str, options: CheckOptions) -> FileReport:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            source = f.read()
    except (OSError, UnicodeDecodeError) as e:
        get_logger().warning(f"Не удалось прочитать {path}: {e}")
        diagnostic = Diagnostic(
            phase=Phase.PARSE,
            code=IO_ERROR,
            message=f"не удалось прочитать файл: {e}",
            span=Span.point(1, 1),
            file=path,
        )
        return FileReport(path, {"parse": "error", "dims": "skipped", "quant": "skipped", "lint": "skipped"}, [diagnostic])

    return check_source(source, path, options)


def check_files(paths: Sequence[str], options: CheckOptions, max_concurrent: int = 4) -> List[FileReport]:
    """
    Проверяет файлы параллельно, не более max_concurrent одновременно.

    Порядок отчётов совпадает с порядком файлов.
    """
    logger = get_logger()

    async def run_all() -> List[FileReport]:
        semaphore = asyncio.Semaphore(max_concurrent)

        async def check_one(path: str) -> FileReport:
            async with semaphore:
                return await asyncio.to_thread(check_file, path, options)

        logger.info(f"Проверка {len(paths)} файлов (параллельно: {max_concurrent})")
        return list(await asyncio.gather(*(check_one(p) for p in paths)))

    return asyncio.run(run_all())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='quantlint',
        description='Статическая проверка единиц измерения и видов величин',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    check = commands.add_parser('check', help='Проверить файлы программ')
    check.add_argument('files', nargs='+', metavar='FILE', help='Файлы программ (.uq)')
    check.add_argument('--json', action='store_true', help='Выводить JSON Lines, один объект на файл')
    check.add_argument('--strict-discipline', action='store_true', default=None,
                       help='Нарушения дисциплины считать ошибками')
    check.add_argument('--units', metavar='FILE', help='Файл дополнительных единиц')
    check.add_argument('--dump-env', action='store_true', help='Печатать итоговые окружения rho и tau')
    check.add_argument('--keep-going', action='store_true',
                       help='Проверять виды величин даже при ошибках размерностей')
    return parser


@logging()
def run_check(files: Sequence[str], json_output: bool = False, strict_discipline: bool = False,
              units: Optional[str] = None, dump_env: bool = False, keep_going: bool = False,
              max_concurrent: int = 4, gate_quant_on_dims: bool = True, out: Optional[TextIO] = None) -> int:
    """
    Проверяет файлы и печатает отчёты в out (по умолчанию stdout).

    Returns:
        int: 0 - всё чисто, 1 - ошибки проверки или дисциплины, 2 - ошибки разбора,
        чтения файлов или файла единиц
    """
    out = out or sys.stdout

    try:
        table = load_unit_table(units)
    except (OSError, UnitError) as e:
        print(f"quantlint: ошибка файла единиц: {e}", file=sys.stderr)
        return EXIT_PARSE_OR_IO

    options = CheckOptions(
        table=table,
        strict_discipline=strict_discipline,
        gate_quant_on_dims=gate_quant_on_dims and not keep_going,
        dump_env=dump_env,
    )
    reports = check_files(files, options, max_concurrent)

    for report in reports:
        if json_output:
            out.write(json.dumps(report.to_dict(), ensure_ascii=False) + "\n")
        else:
            out.write(report.render())

    return max((r.exit_code for r in reports), default=EXIT_OK)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_PARSE_OR_IO

    try:
        config = get_config()
    except (FileNotFoundError, ValueError) as e:
        print(f"quantlint: ошибка конфигурации: {e}", file=sys.stderr)
        return EXIT_PARSE_OR_IO

    logger_setup(
        name=config.LOGGING.LOGGING_NAME,
        level=config.LOGGING.LOGGING_LEVEL,
        log_dir=config.LOGGING.LOGGING_DIR,
        log_to_console=config.LOGGING.LOGGING_ON_CONSOLE,
        log_to_file=config.LOGGING.LOGGING_ON_FILE,
    )

    strict = config.CHECKER.STRICT_DISCIPLINE if args.strict_discipline is None else args.strict_discipline

    return run_check(
        args.files,
        json_output=args.json,
        strict_discipline=strict,
        units=args.units or config.CHECKER.UNITS_FILE,
        dump_env=args.dump_env,
        keep_going=args.keep_going,
        max_concurrent=config.CHECKER.MAX_CONCURRENT,
        gate_quant_on_dims=config.CHECKER.GATE_QUANT_ON_DIMS,
    )
