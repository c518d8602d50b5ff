"""Тесты поверхностного синтаксиса термов."""

import pytest
from hypothesis import given

from lam import app, church, lam, lams, unlams
from synpy.exceptions import ParseError, ScopeError
from synpy.syntax import default_context, format_term, parse_context, parse_term
from synpy.terms import Var
from strategies import scoped


class TestParseContext:
    def test_names(self):
        assert parse_context("y, z") == ("y", "z")

    def test_empty(self):
        assert parse_context("") == ()

    def test_duplicate(self):
        with pytest.raises(ParseError):
            parse_context("y,y")

    def test_reserved(self):
        with pytest.raises(ParseError):
            parse_context("bind")


# ═══════════════════════════════════════════════════════════
#  parse_term
# ═══════════════════════════════════════════════════════════


class TestParseTerm:
    def test_beta_redex(self, sig):
        t = parse_term(sig, "(app (abs (bind (x) x)) y)", ["y"])
        assert t == app(lam(Var(1)), Var(0))

    def test_free_variable_order(self, sig):
        assert parse_term(sig, "(app z y)", ["y", "z"]) == app(Var(1), Var(0))

    def test_shadowing(self, sig):
        t = parse_term(sig, "(abs (bind (y) y))", ["y"])
        assert t == lam(Var(1))

    def test_church_two(self, sig):
        t = parse_term(sig, "(abs (bind (f) (abs (bind (x) (app f (app f x))))))")
        assert t == church(2)

    def test_unknown_variable(self, sig):
        with pytest.raises(ParseError):
            parse_term(sig, "(app x y)", ["y"])

    def test_binder_required(self, sig):
        with pytest.raises(ParseError):
            parse_term(sig, "(abs x)", ["x"])

    def test_wrong_binder_count(self, sig):
        with pytest.raises(ParseError):
            parse_term(sig, "(abs (bind (x y) x))")

    def test_wrong_argument_count(self, sig):
        with pytest.raises(ParseError):
            parse_term(sig, "(app y)", ["y"])

    def test_unknown_operation(self, sig):
        with pytest.raises(ParseError):
            parse_term(sig, "(lam (bind (x) x))")


# ═══════════════════════════════════════════════════════════
#  format_term
# ═══════════════════════════════════════════════════════════


class TestFormatTerm:
    def test_beta_redex(self):
        assert format_term(app(lam(Var(1)), Var(0)), ["y"]) == "(app (abs (bind (x) x)) y)"

    def test_binder_avoids_free_names(self):
        assert format_term(lam(app(Var(1), Var(0))), ["x"]) == "(abs (bind (y) (app y x)))"

    def test_nested_binders_distinct(self):
        assert format_term(church(1), []) == "(abs (bind (x) (abs (bind (y) (app x y)))))"

    def test_default_context(self):
        assert default_context(3) == ("v0", "v1", "v2")
        assert format_term(app(Var(0), Var(2)), default_context(3)) == "(app v0 v2)"

    def test_out_of_scope(self):
        with pytest.raises(ScopeError):
            format_term(Var(1), ["y"])

    @given(scoped())
    def test_round_trip(self, sig, nt):
        n, t = nt
        names = default_context(n)
        assert parse_term(sig, format_term(t, names), names) == t


class TestDeepTerms:
    DEPTH = 1500

    def test_parse_deep(self, sig):
        text = "(abs (bind (x) " * self.DEPTH + "x" + "))" * self.DEPTH
        assert unlams(parse_term(sig, text)) == (self.DEPTH, Var(self.DEPTH - 1))

    def test_format_round_trip(self, sig):
        t = lams(self.DEPTH, app(Var(0), Var(self.DEPTH)))
        back = parse_term(sig, format_term(t, ["y"]), ["y"])
        assert unlams(back) == (self.DEPTH, app(Var(0), Var(self.DEPTH)))
