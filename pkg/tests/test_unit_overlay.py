from fractions import Fraction

import pytest

from quantlint.algebra import UnitTable, unit_to_spec
from quantlint.clients import UnitOverlayFile, load_unit_table
from quantlint.errors import UnitError
from quantlint.models import Dims


@pytest.fixture
def overlay(tmp_path):
    def _write(text: str) -> str:
        path = tmp_path / "units.txt"
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write


def test_no_path_gives_default_table():
    assert load_unit_table(None) == UnitTable.default()


def test_scaled_unit(overlay):
    table = load_unit_table(overlay("furlong = yard factor 220\n"))
    spec = unit_to_spec("furlong", table)
    assert spec.dims == Dims.of(1, 0, 0)
    assert spec.factor == Fraction("201.168")


def test_comments_and_blank_lines(overlay):
    path = overlay("# длины\n\nfurlong = yard factor 220  # 220 ярдов\n")
    assert "furlong" in load_unit_table(path)


def test_later_lines_see_earlier_symbols(overlay):
    table = load_unit_table(overlay("furlong = yard factor 220\nlea = furlong / s\n"))
    assert unit_to_spec("lea", table).factor == Fraction("201.168")
    assert unit_to_spec("lea", table).dims == Dims.of(1, 0, -1)


def test_later_definition_shadows(overlay):
    table = load_unit_table(overlay("span = m factor 2\nspan = m factor 3\n"))
    assert unit_to_spec("span", table).factor == 3


def test_affine_offset(overlay):
    table = load_unit_table(overlay("degC = 1 offset 273.15\ndegF = 1 factor 5/9 offset 45967/180\n"))
    celsius, fahrenheit = unit_to_spec("degC", table), unit_to_spec("degF", table)
    assert celsius.offset == Fraction("273.15")
    # 212 °F совпадает со 100 °C
    assert fahrenheit.factor * 212 + fahrenheit.offset == celsius.factor * 100 + celsius.offset


def test_offset_is_scaled_by_base_factor(overlay):
    table = load_unit_table(overlay("mark = km offset 2\n"))
    spec = unit_to_spec("mark", table)
    assert (spec.factor, spec.offset) == (1000, 2000)


@pytest.mark.parametrize("text", [
    "furlong yard\n",
    "furlong = parsec\n",
    "furlong = yard factor x\n",
    "1x = m\n",
])
def test_bad_line_reports_location(overlay, text):
    path = overlay("ok = m\n" + text)
    with pytest.raises(UnitError) as info:
        load_unit_table(path)
    assert f"{path}:2:" in info.value.message


def test_missing_file():
    with pytest.raises(OSError):
        load_unit_table("/nonexistent/units.txt")


def test_must_be_opened(overlay):
    with pytest.raises(RuntimeError):
        UnitOverlayFile(overlay("x = m\n")).load()


def test_default_table_is_untouched(overlay):
    load_unit_table(overlay("furlong = yard factor 220\n"))
    assert "furlong" not in UnitTable.default()
