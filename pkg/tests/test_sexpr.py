"""Тесты чтения и печати s-выражений."""

import pytest

from synpy.exceptions import ParseError
from synpy.sexpr import dump, read


# ═══════════════════════════════════════════════════════════
#  read
# ═══════════════════════════════════════════════════════════


class TestRead:
    def test_atom(self):
        assert read("fresh") == "fresh"

    def test_nested_list(self):
        assert read("(comp (proj 0) (ctor abs))") == ["comp", ["proj", "0"], ["ctor", "abs"]]

    def test_empty_list(self):
        assert read("(bang)") == ["bang"]
        assert read("()") == []

    def test_whitespace_and_comments(self):
        text = """
        ; бета-редекс
        (app   (abs (bind (x) x))  ; комментарий
              y)
        """
        assert read(text) == ["app", ["abs", ["bind", ["x"], "x"]], "y"]

    def test_unclosed_list_points_to_opening_paren(self):
        with pytest.raises(ParseError) as exc:
            read("\n  (app x")
        assert (exc.value.line, exc.value.col) == (2, 3)

    def test_extra_closing_paren(self):
        with pytest.raises(ParseError) as exc:
            read("(app x y))")
        assert exc.value.col == 10

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            read("x y")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            read("   ")


class TestDeepNesting:
    DEPTH = 5000

    def test_read_deep(self):
        value = read("(f " * self.DEPTH + "x" + ")" * self.DEPTH)
        depth = 0
        while isinstance(value, list):
            assert value[0] == "f"
            value = value[1]
            depth += 1
        assert (depth, value) == (self.DEPTH, "x")

    def test_dump_deep(self):
        text = "(f " * self.DEPTH + "x" + ")" * self.DEPTH
        assert dump(read(text)) == text

    def test_deep_unclosed_points_to_innermost(self):
        with pytest.raises(ParseError) as exc:
            read("(f " * self.DEPTH + "x")
        assert exc.value.col == 3 * self.DEPTH - 2


# ═══════════════════════════════════════════════════════════
#  dump
# ═══════════════════════════════════════════════════════════


class TestDump:
    def test_canonical_spacing(self):
        assert dump(read("(  comp\n(proj 0)   weaken )")) == "(comp (proj 0) weaken)"

    def test_empty_list(self):
        assert dump([]) == "()"
