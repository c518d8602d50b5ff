"""Тесты моделей и начального морфизма."""

import pytest

from lam import app, church, lam
from synpy.exceptions import ModelError
from synpy.models import (
    ChaoticModel,
    DiscreteModel,
    FreeVarsModel,
    PermutedModel,
    SyntacticModel,
    check_init_monad_morphism,
    check_init_monotone,
    fold_map,
    init_fold,
    parse_model,
)
from synpy.signature import Operation, Signature1
from synpy.terms import SubstMap, Var


# ═══════════════════════════════════════════════════════════
#  Встроенные модели
# ═══════════════════════════════════════════════════════════


class TestBuiltins:
    def test_discrete_order(self, sig):
        model = DiscreteModel(sig)
        assert model.leq(1, Var(0), Var(0)) is True
        assert model.leq(1, Var(0), lam(Var(1))) is False

    def test_chaotic_order(self, sig):
        assert ChaoticModel(sig).leq(0, church(1), church(2)) is True

    def test_render_with_names(self, sig):
        model = DiscreteModel(sig)
        assert model.render(1, app(Var(0), Var(0)), ["y"]) == "(app y y)"
        assert model.render(1, Var(0)) == "v0"

    def test_default_subst1(self, sig):
        model = FreeVarsModel(sig)
        assert model.subst1(1, frozenset({0, 1}), frozenset()) == frozenset({0})

    def test_permuted_rejects_non_permutation(self, sig):
        with pytest.raises(ModelError):
            PermutedModel(sig, {"app": (0, 0)})

    def test_permuted_rejects_unknown_operation(self, sig):
        with pytest.raises(ModelError):
            PermutedModel(sig, {"lam": (0,)})

    def test_permuted_must_keep_binding_depths(self):
        let = Operation("let", (0, 1))
        with pytest.raises(ModelError):
            PermutedModel(Signature1((let,)), {"let": (1, 0)})

    def test_freevars_order_is_reverse_inclusion(self, sig):
        model = FreeVarsModel(sig)
        assert model.leq(2, frozenset({0, 1}), frozenset({1})) is True
        assert model.leq(2, frozenset({1}), frozenset({0, 1})) is False

    def test_freevars_render(self, sig):
        assert FreeVarsModel(sig).render(2, frozenset({1, 0})) == "{v0, v1}"


class TestParseModel:
    @pytest.mark.parametrize("selector,kind", [
        ("syntactic", SyntacticModel),
        ("discrete", DiscreteModel),
        ("chaotic", ChaoticModel),
        ("freevars", FreeVarsModel),
        ("permuted:app=1,0", PermutedModel),
    ])
    def test_selectors(self, beta, selector, kind):
        model = parse_model(selector, beta)
        assert isinstance(model, kind)
        assert model.selector == selector

    def test_syntactic_fuel(self, beta):
        model = parse_model("syntactic", beta, fuel=7)
        assert isinstance(model, SyntacticModel)
        assert model.fuel == 7

    def test_permutation_table(self, beta):
        model = parse_model("permuted: app=1,0, abs=0", beta)
        assert isinstance(model, PermutedModel)
        assert model.table == {"app": (1, 0), "abs": (0,)}

    @pytest.mark.parametrize("selector", ["bogus", "permuted:app=x", "permuted:1,0"])
    def test_errors(self, beta, selector):
        with pytest.raises(ModelError):
            parse_model(selector, beta)


# ═══════════════════════════════════════════════════════════
#  Начальный морфизм
# ═══════════════════════════════════════════════════════════


class TestInitFold:
    @pytest.mark.parametrize("t,n", [
        (Var(0), 1),
        (app(lam(Var(1)), Var(0)), 1),
        (church(3), 0),
    ])
    def test_identity_into_term_models(self, beta, t, n):
        assert init_fold(SyntacticModel(beta), n, t) == t
        assert init_fold(DiscreteModel(beta.sig), n, t) == t

    def test_permuted(self, sig):
        model = PermutedModel(sig, {"app": (1, 0)})
        assert init_fold(model, 2, app(Var(0), Var(1))) == app(Var(1), Var(0))

    def test_permuted_under_binder(self, sig):
        model = PermutedModel(sig, {"app": (1, 0)})
        t = lam(app(Var(0), app(Var(1), Var(0))))
        assert init_fold(model, 1, t) == lam(app(app(Var(0), Var(1)), Var(0)))

    def test_free_variables(self, sig):
        model = FreeVarsModel(sig)
        assert init_fold(model, 1, lam(app(Var(1), Var(0)))) == frozenset({0})
        assert init_fold(model, 2, app(Var(1), lam(Var(2)))) == frozenset({1})
        assert init_fold(model, 0, church(2)) == frozenset()

    def test_deep_term(self, sig):
        t = Var(0)
        for _ in range(5000):
            t = app(t, Var(1))
        assert init_fold(FreeVarsModel(sig), 2, t) == frozenset({0, 1})

    def test_fold_map(self, sig):
        f = SubstMap((lam(Var(1)), app(Var(0), Var(0))), 1)
        assert fold_map(FreeVarsModel(sig), f) == SubstMap((frozenset(), frozenset({0})), 1)


class TestInitMonadMorphism:
    @pytest.mark.parametrize("make", [
        DiscreteModel,
        ChaoticModel,
        FreeVarsModel,
        lambda sig: PermutedModel(sig, {"app": (1, 0)}),
    ])
    def test_builtins_pass(self, sig, make):
        report = check_init_monad_morphism(make(sig), samples=60)
        assert report.passed, report.format()

    def test_one_sided_swap_fails(self, one_sided_swap):
        report = check_init_monad_morphism(one_sided_swap, samples=100)
        assert not report.passed
        failing = [law for law in report.laws if not law.passed]
        assert failing[0].failures


class TestInitMonotone:
    def test_chaotic(self, beta):
        report = check_init_monotone(ChaoticModel(beta.sig), 60, sig2=beta)
        assert report.applicable
        assert report.passed

    def test_syntactic_one_step_of_fuel(self, beta):
        report = check_init_monotone(SyntacticModel(beta), 60, fuel=1)
        assert report.applicable
        assert report.passed
        assert report.laws[0].unknown == 0

    def test_free_variables(self, beta):
        report = check_init_monotone(FreeVarsModel(beta.sig), 60, sig2=beta)
        assert report.applicable
        assert report.passed

    def test_discrete_not_applicable(self, beta):
        report = check_init_monotone(DiscreteModel(beta.sig), 60, sig2=beta)
        assert not report.applicable
        assert "beta" in report.note
        assert report.laws == []

    def test_needs_signature(self, sig):
        with pytest.raises(ModelError):
            check_init_monotone(ChaoticModel(sig), 10)
