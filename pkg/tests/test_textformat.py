import pytest

from treeauto.catalog import all_entries
from treeauto.core import IDENTITY, Perm, Word
from treeauto.errors import ParseError
from treeauto.textformat import dump, format_presentation, load, parse, parse_word


def test_parse_reduced_basilica():
    P = parse("A = (2 3) (1, 1, 1, A)\nB = (0 2)(1 3) (1, 1, 1, B)")
    assert P.degree == 4
    assert P.names == ["A", "B"]
    assert P["A"].perm == Perm.from_cycles(4, [[2, 3]])
    assert P["B"].perm == Perm.from_cycles(4, [[0, 2], [1, 3]])
    assert P["A"].transitions == (IDENTITY, IDENTITY, IDENTITY, Word.gen("A"))


def test_parse_finitary_state():
    P = parse("A = (0 1) (1, 1)")
    assert P.degree == 2
    assert P["A"].perm == Perm([1, 0])
    assert P["A"].transitions == (IDENTITY, IDENTITY)


def test_comments_blank_lines_and_words():
    P = parse("# weak example\n\ns = (0 1) (1, 1)   # sigma\na = (0 1) (s, s*a^1)\n")
    assert P["a"].transitions == (Word.gen("s"), Word([("s", 1), ("a", 1)]))


@pytest.mark.parametrize("text, fragment, line", [
    ("A = (0 0) (1,1)", "repeated letter", 1),
    ("A = (0 2) (1,1)", "out of range", 1),
    ("A = (1, 1)\nB = (1, 1, 1)", "expected 2", 2),
    ("A = (1, C)", "unknown state", 1),
    ("A = (1, 1)\nA = (1, 1)", "duplicate state", 2),
    ("A = (0 1)", "missing transition tuple", 1),
    ("A (0 1) (1, 1)", "expected 'name", 1),
    ("A = (1, b^x)", "malformed word", 1),
    ("A = (0 1 (1, 1)", "nested", 1),
])
def test_parse_errors_carry_positions(text, fragment, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert fragment in str(info.value)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}")


def test_parse_error_column_points_at_cycle():
    with pytest.raises(ParseError) as info:
        parse("A = (0 0) (1,1)")
    assert info.value.col == 6


def test_empty_input_is_rejected():
    with pytest.raises(ParseError):
        parse("# nothing\n")


def test_parse_word_forms():
    assert parse_word("1") == IDENTITY
    assert parse_word("a^-2*b") == Word([("a", -1), ("a", -1), ("b", 1)])
    assert parse_word("a * 1 * b") == parse_word("a*b")
    with pytest.raises(ParseError):
        parse_word("a", known={"b"})


def test_printer_is_a_normalization_fixpoint():
    text = "A=(3 2)   (1,1,1,A)\nB = (1 3)(2 0) (1,1,1, B)"
    once = format_presentation(parse(text))
    assert once == "A = (2 3) (1, 1, 1, A)\nB = (0 2)(1 3) (1, 1, 1, B)\n"
    assert format_presentation(parse(once)) == once


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_catalog_round_trip(entry, tmp_path):
    path = tmp_path / f"{entry.name}.tree"
    dump(entry.presentation, path)
    again = load(path)
    assert again == entry.presentation
    for name in entry.presentation.names:
        assert again[name] == entry.presentation[name]
