import pytest

from conftest import corpus
from eqalg.core import diamond
from eqalg.fileformat import AlgebraFileError, parse_algebra, read_algebra, serialize_algebra

ONE = """elements: 1
top: 1
meet:
  1
sim:
  1
bsim:
  1
"""


def test_fixture_file(data_path):
    alg = read_algebra(data_path("diamond.alg"))
    assert alg.names == ("0", "a", "b", "1")
    assert alg.sim[alg.index("0")][alg.index("a")] == alg.index("b")
    assert alg.same_tables(diamond())


def test_one_element_file(data_path):
    alg = parse_algebra(ONE)
    assert alg.n == 1
    assert read_algebra(data_path("one.alg")).same_tables(alg)


def test_round_trip():
    for alg in corpus(4) + (diamond(),):
        text = serialize_algebra(alg)
        again = parse_algebra(text)
        assert again.same_tables(alg) and again.names == alg.names
        assert serialize_algebra(again) == text


def test_comments_and_blank_lines():
    text = "# header\n\n" + ONE.replace("top: 1", "top: 1   # the unit")
    assert parse_algebra(text).n == 1


def _error(text):
    with pytest.raises(AlgebraFileError) as info:
        parse_algebra(text)
    return info.value


def test_ragged_row_reports_line(data_path):
    lines = open(data_path("diamond.alg")).read().splitlines()
    k = lines.index("sim:") + 2
    lines[k] = "  1 1 a"
    err = _error("\n".join(lines))
    assert err.line == k + 1
    assert "ragged" in str(err)
    lines[k] = "  1 1 a a b"
    err = _error("\n".join(lines))
    assert err.line == k + 1 and err.column == 11


def test_duplicate_names():
    err = _error(ONE.replace("elements: 1", "elements: 1 1"))
    assert err.line == 1 and err.column == 13


def test_missing_block():
    err = _error(ONE.split("bsim:")[0])
    assert "bsim" in str(err)


def test_unknown_cell():
    err = _error(ONE.replace("sim:\n  1", "sim:\n  x"))
    assert err.line == 6 and err.column == 3 and "unknown element" in str(err)


def test_unknown_top_and_header():
    assert "top" in str(_error(ONE.replace("top: 1", "top: z")))
    assert "unknown header" in str(_error(ONE + "join:\n"))


def test_too_few_rows():
    text = serialize_algebra(diamond())
    cut = text.replace("sim:\n  1 b a 0\n", "sim:\n")
    assert "rows" in str(_error(cut))


def test_parse_does_not_check_axioms():
    text = ONE.replace("elements: 1", "elements: 1 0").replace(
        "meet:\n  1", "meet:\n  1 0\n  0 0").replace(
        "sim:\n  1", "sim:\n  0 0\n  0 0").replace("bsim:\n  1", "bsim:\n  0 0\n  0 0")
    assert parse_algebra(text).n == 2
