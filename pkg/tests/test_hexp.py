"""Тесты полуравенств: типизация, дисциплина образцов, синтаксис."""

import pytest

from lam import BETA_LHS, ETA_LHS
from synpy.exceptions import ParseError, PatternError, ShapeError
from synpy.hexp import (
    Bang,
    Comp,
    Ctor,
    Deriv,
    Fresh,
    Id,
    Pair,
    Proj,
    Subst1,
    Weaken,
    check_pattern,
    format_hexp,
    parse_hexp,
    shape_check,
)


# ═══════════════════════════════════════════════════════════
#  shape_check
# ═══════════════════════════════════════════════════════════


class TestShapeCheck:
    def test_constructor(self, sig):
        assert shape_check(sig, Ctor("app")) == ((0, 0), (0,))

    def test_identity_with_descriptor(self, sig):
        assert shape_check(sig, Id((1, 0))) == ((1, 0), (1, 0))

    def test_beta_lhs_inferred(self, sig):
        assert shape_check(sig, parse_hexp(BETA_LHS)) == ((1, 0), (0,))

    def test_beta_rhs(self, sig):
        assert shape_check(sig, Subst1()) == ((1, 0), (0,))

    def test_eta_lhs_inferred(self, sig):
        assert shape_check(sig, parse_hexp(ETA_LHS)) == ((0,), (0,))

    def test_weaken_against_ambient(self, sig):
        assert shape_check(sig, Weaken(), (2,)) == ((2,), (3,))

    def test_fresh(self, sig):
        assert shape_check(sig, Fresh()) == ((), (1,))

    def test_bang_against_ambient(self, sig):
        assert shape_check(sig, Bang(), (1, 0)) == ((1, 0), ())

    def test_deriv_adds_one(self, sig):
        assert shape_check(sig, Deriv(Ctor("app"))) == ((1, 1), (1,))

    def test_pair_concatenates(self, sig):
        e = Pair((Proj(1), Proj(0), Proj(1)))
        assert shape_check(sig, e, (2, 0)) == ((2, 0), (0, 2, 0))

    def test_mismatch_points_to_subexpression(self, sig):
        e = Comp(Proj(0), Ctor("app"))
        with pytest.raises(ShapeError) as exc:
            shape_check(sig, e, (1, 0))
        assert exc.value.path == ("comp.then",)

    def test_unknown_operation(self, sig):
        with pytest.raises(ShapeError):
            shape_check(sig, Ctor("lam"))

    def test_projection_out_of_range(self, sig):
        with pytest.raises(ShapeError):
            shape_check(sig, Proj(2), (0, 0))

    def test_deriv_needs_positive_slots(self, sig):
        with pytest.raises(ShapeError) as exc:
            shape_check(sig, Deriv(Id()), (0,))
        assert exc.value.path == ()

    def test_domain_not_inferable(self, sig):
        with pytest.raises(ShapeError):
            shape_check(sig, Pair((Proj(1),)))


# ═══════════════════════════════════════════════════════════
#  check_pattern
# ═══════════════════════════════════════════════════════════


class TestPatternDiscipline:
    def test_beta_lhs(self, sig):
        check_pattern(sig, parse_hexp(BETA_LHS), (1, 0))

    def test_eta_lhs(self, sig):
        check_pattern(sig, parse_hexp(ETA_LHS), (0,))

    def test_bare_projection(self, sig):
        check_pattern(sig, Proj(0), (0,))

    def test_subst_forbidden(self, sig):
        with pytest.raises(PatternError):
            check_pattern(sig, Subst1(), (1, 0))

    def test_non_linear(self, sig):
        with pytest.raises(PatternError):
            check_pattern(sig, parse_hexp("(comp (pair (proj 0) (proj 0)) (ctor app))"), (0,))

    def test_unbound_slot(self, sig):
        with pytest.raises(PatternError):
            check_pattern(sig, parse_hexp("(comp (proj 0) (ctor abs))"), (1, 0))

    def test_bang_binds_nothing(self, sig):
        with pytest.raises(PatternError):
            check_pattern(sig, parse_hexp("(comp (pair (comp (bang) fresh)) (ctor abs))"), (0,))

    def test_ill_typed_pattern(self, sig):
        with pytest.raises(PatternError):
            check_pattern(sig, Ctor("app"), (1,))


# ═══════════════════════════════════════════════════════════
#  Синтаксис
# ═══════════════════════════════════════════════════════════


class TestSyntax:
    @pytest.mark.parametrize("text", [
        BETA_LHS,
        ETA_LHS,
        "subst",
        "(proj 3)",
        "(id 1 0)",
        "(bang)",
        "(deriv (deriv (ctor app)))",
    ])
    def test_canonical_round_trip(self, text):
        assert format_hexp(parse_hexp(text)) == text

    def test_comp_folds_left(self):
        e = parse_hexp("(comp (proj 0) weaken weaken)")
        assert e == Comp(Comp(Proj(0), Weaken()), Weaken())

    def test_atoms_in_parentheses(self):
        assert parse_hexp("(fresh)") == Fresh()

    def test_descriptors(self):
        assert parse_hexp("(bang 2 0)") == Bang((2, 0))

    @pytest.mark.parametrize("text", [
        "(proj x)",
        "(frob)",
        "lambda",
        "(comp (proj 0))",
        "(ctor)",
        "((proj 0))",
    ])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_hexp(text)
