from pathlib import Path
import re
from typing import List, Optional, Tuple

from quantlint import get_logger
from quantlint.algebra.units import UnitTable, unit_to_spec
from quantlint.errors import UnitError
from quantlint.models.dims import UnitSpec
from quantlint.utils import parse_rational

_LINE_RE = re.compile(
    r'^(?P<symbol>[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(?P<expr>.+?)'
    r'(?:\s+factor\s+(?P<factor>\S+))?(?:\s+offset\s+(?P<offset>\S+))?\s*$'
)


class UnitOverlayFile:
    """
    Файл дополнительных единиц.

    Формат строки: `symbol = <выражение единиц> [factor <рациональное>] [offset <рациональное>]`.
    `#` начинает комментарий, пустые строки пропускаются. Определение может
    ссылаться на символы, объявленные выше в этом же файле; более поздние
    определения затеняют ранние.

        with UnitOverlayFile("units.txt") as overlay:
            table = overlay.load(UnitTable.default())
    """

    def __init__(self, path: str, encoding: str = 'utf-8') -> None:
        self.path = Path(path)
        self.encoding = encoding
        self.logger = get_logger()
        self._lines: Optional[List[str]] = None

    def __enter__(self) -> "UnitOverlayFile":
        with open(self.path, 'r', encoding=self.encoding) as f:
            self._lines = f.read().splitlines()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self._lines = None

    def _parse_line(self, number: int, line: str, table: UnitTable) -> Optional[Tuple[str, UnitSpec]]:
        text = line.split('#', 1)[0].strip()
        if not text:
            return None

        match = _LINE_RE.match(text)
        if not match:
            raise UnitError(f"{self.path}:{number}: ожидалось `symbol = выражение [factor r] [offset r]`")

        try:
            base = unit_to_spec(match.group('expr'), table)
            factor = parse_rational(match.group('factor')) if match.group('factor') else 1
            offset = parse_rational(match.group('offset')) if match.group('offset') else 0
            # v_expr = factor * v + offset, затем v_SI = base.factor * v_expr + base.offset
            spec = UnitSpec(base.dims, base.factor * factor, base.factor * offset + base.offset)
        except (UnitError, ValueError) as e:
            message = e.message if isinstance(e, UnitError) else str(e)
            raise UnitError(f"{self.path}:{number}: {message}")

        return match.group('symbol'), spec

    def load(self, table: Optional[UnitTable] = None) -> UnitTable:
        """Возвращает новую таблицу: исходная плюс определения из файла."""
        if self._lines is None:
            raise RuntimeError("UnitOverlayFile нужно открыть через `with`")

        table = UnitTable.default() if table is None else table
        count = 0
        for number, line in enumerate(self._lines, start=1):
            parsed = self._parse_line(number, line, table)
            if parsed is None:
                continue
            symbol, spec = parsed
            if symbol in table:
                self.logger.debug(f"{self.path}:{number}: единица '{symbol}' переопределена")
            table = table.extend(symbol, spec)
            count += 1

        self.logger.info(f"Загружено единиц из {self.path}: {count}")
        return table


def load_unit_table(path: Optional[str]) -> UnitTable:
    if not path:
        return UnitTable.default()
    with UnitOverlayFile(path) as overlay:
        return overlay.load(UnitTable.default())
