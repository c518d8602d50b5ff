"""Модели (представления) сигнатуры и начальный морфизм в них.

Модель — это монада над контекстами (единица ``eta``, подстановка
``kleisli``, переименование ``rename``), по одной операции на каждую арность
и предпорядок ``leq``.  Встроенные модели::

    syntactic   термы с порядком редукций (начальное представление Σ_A)
    discrete    термы с диагональным порядком (ΔΣ)
    chaotic     термы, любые два связаны
    permuted    термы, аргументы операций переставлены; порядок хаотичный
    freevars    конечные множества свободных переменных; a ≤ b ⇔ b ⊆ a
"""

from __future__ import annotations

import abc
import logging
import random
from typing import TYPE_CHECKING, Generic, Mapping, Optional, Sequence, TypeVar

from synpy.exceptions import ModelError
from synpy.modules import ProdElem
from synpy.signature import Operation, Signature1, Signature2
from synpy.syntax import default_context, format_term
from synpy.terms import (
    Con,
    Renaming,
    SubstMap,
    Term,
    Var,
    rename,
    scope_check,
    subst,
    subst1,
)

if TYPE_CHECKING:
    from synpy.laws import Report

log = logging.getLogger(__name__)

__all__ = [
    "Model",
    "TermModel",
    "SyntacticModel",
    "DiscreteModel",
    "ChaoticModel",
    "PermutedModel",
    "FreeVarsModel",
    "MODEL_NAMES",
    "parse_model",
    "init_fold",
    "fold_map",
    "check_init_monad_morphism",
    "check_init_monotone",
]

C = TypeVar("C")

_DEFAULT_FUEL = 1000

MODEL_NAMES = ("syntactic", "discrete", "chaotic", "permuted", "freevars")


class Model(abc.ABC, Generic[C]):
    """Интерфейс представления.

    Законы монады, модульность операций и предпорядок не предполагаются:
    их проверяют :func:`synpy.laws.check_monad_laws`,
    :func:`synpy.laws.check_rep_morphism` и :func:`synpy.laws.check_order_laws`.
    """

    name = "model"

    def __init__(self, signature: Signature1):
        self.signature = signature

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.selector}>"

    @property
    def selector(self) -> str:
        return self.name

    @abc.abstractmethod
    def eta(self, n: int, i: int) -> C:
        """Переменная ``i`` контекста ``n`` как элемент носителя."""

    @abc.abstractmethod
    def kleisli(self, f: SubstMap[C], x: C) -> C:
        """Подстановка ``f : m → n`` в ``x`` из контекста ``m``."""

    @abc.abstractmethod
    def rename(self, f: Renaming, x: C) -> C: ...

    @abc.abstractmethod
    def op(self, op: Operation, e: ProdElem[C]) -> C:
        """Операция модели на кортеже из ``R^{arity}``."""

    @abc.abstractmethod
    def leq(self, n: int, a: C, b: C, *, fuel: Optional[int] = None) -> Optional[bool]:
        """``True``/``False``; ``None`` — порядок не решён за отведённое топливо."""

    def eq(self, n: int, a: C, b: C) -> bool:
        return a == b

    def contains(self, n: int, x: C) -> bool:
        """Принадлежит ли ``x`` носителю в контексте ``n``."""
        return True

    def subst1(self, n: int, body: C, arg: C) -> C:
        """``body[* := arg]`` через ``kleisli`` с образами ``η(0..n-1), arg``."""
        images = tuple(self.eta(n, i) for i in range(n)) + (arg,)
        return self.kleisli(SubstMap(images, n), body)

    def weaken(self, n: int, x: C, k: int = 1) -> C:
        return self.rename(Renaming.inclusion(n, k), x)

    def render(self, n: int, x: C, names: Optional[Sequence[str]] = None) -> str:
        """Печать значения; ``names`` — имена переменных контекста."""
        return repr(x)


# ──────────────────────────── Термовые модели ────────────────────────────

class TermModel(Model[Term]):
    """Носитель — термы; монада — ядро :mod:`synpy.terms`."""

    def eta(self, n: int, i: int) -> Term:
        return Var(i)

    def kleisli(self, f: SubstMap[Term], x: Term) -> Term:
        return subst(f, x)

    def rename(self, f: Renaming, x: Term) -> Term:
        return rename(f, x)

    def op(self, op: Operation, e: ProdElem[Term]) -> Term:
        return Con(op, e.values)

    def subst1(self, n: int, body: Term, arg: Term) -> Term:
        return subst1(body, arg, n)

    def contains(self, n: int, x: Term) -> bool:
        return scope_check(n, x)

    def render(self, n: int, x: Term, names: Optional[Sequence[str]] = None) -> str:
        return format_term(x, default_context(n) if names is None else names)


class DiscreteModel(TermModel):
    name = "discrete"

    def leq(self, n: int, a: Term, b: Term, *, fuel: Optional[int] = None) -> Optional[bool]:
        return a == b


class ChaoticModel(TermModel):
    name = "chaotic"

    def leq(self, n: int, a: Term, b: Term, *, fuel: Optional[int] = None) -> Optional[bool]:
        return True


class PermutedModel(ChaoticModel):
    """Операция ``op`` строит ``Con(op, …)`` из аргументов, переставленных по таблице.

    ``table["app"] = (1, 0)``: k-й аргумент результата — ``values[table[k]]``.
    Перестановка обязана сохранять глубины связывания.
    """

    name = "permuted"

    def __init__(self, signature: Signature1, table: Mapping[str, Sequence[int]]):
        super().__init__(signature)
        perms: dict[str, tuple[int, ...]] = {}
        for name, perm in table.items():
            op = signature.get(name)
            if op is None:
                raise ModelError(f"в сигнатуре нет операции {name!r}")
            perm = tuple(perm)
            if sorted(perm) != list(range(len(op.arity))):
                raise ModelError(f"{name}: {list(perm)} не перестановка {len(op.arity)} аргументов")
            if any(op.arity[p] != op.arity[k] for k, p in enumerate(perm)):
                raise ModelError(f"{name}: перестановка {list(perm)} меняет глубины связывания")
            perms[name] = perm
        self.table = perms

    @property
    def selector(self) -> str:
        parts = [
            f"{name}={','.join(str(p) for p in perm)}"
            for name, perm in self.table.items()
        ]
        return "permuted:" + ",".join(parts)

    def op(self, op: Operation, e: ProdElem[Term]) -> Term:
        perm = self.table.get(op.name)
        if perm is None:
            return Con(op, e.values)
        return Con(op, tuple(e.values[p] for p in perm))


class SyntacticModel(TermModel):
    """Начальное представление Σ_A: порядок — достижимость по редукциям."""

    name = "syntactic"

    def __init__(self, sig2: Signature2, fuel: int = _DEFAULT_FUEL):
        super().__init__(sig2.sig)
        self.sig2 = sig2
        self.fuel = fuel

    def leq(self, n: int, a: Term, b: Term, *, fuel: Optional[int] = None) -> Optional[bool]:
        from synpy.reduction import leq

        return leq(self.sig2, n, a, b, self.fuel if fuel is None else fuel)


# ──────────────────────────── Свободные переменные ────────────────────────────

class FreeVarsModel(Model[frozenset[int]]):
    """Носитель в контексте ``n`` — подмножества ``{0..n-1}``.

    Свёртка в эту модель вычисляет множество свободных переменных терма.
    Редукция переменных не добавляет, поэтому ``a ≤ b`` означает ``b ⊆ a``.
    """

    name = "freevars"

    def eta(self, n: int, i: int) -> frozenset[int]:
        return frozenset((i,))

    def kleisli(self, f: SubstMap[frozenset[int]], x: frozenset[int]) -> frozenset[int]:
        return frozenset().union(*(f.images[i] for i in x))

    def rename(self, f: Renaming, x: frozenset[int]) -> frozenset[int]:
        return frozenset(f.images[i] for i in x)

    def op(self, op: Operation, e: ProdElem[frozenset[int]]) -> frozenset[int]:
        # связанные переменные лежат выше контекста e.ctx
        return frozenset(i for v in e.values for i in v if i < e.ctx)

    def leq(
        self, n: int, a: frozenset[int], b: frozenset[int], *, fuel: Optional[int] = None,
    ) -> Optional[bool]:
        return b <= a

    def contains(self, n: int, x: frozenset[int]) -> bool:
        return all(0 <= i < n for i in x)

    def render(
        self, n: int, x: frozenset[int], names: Optional[Sequence[str]] = None,
    ) -> str:
        names = default_context(n) if names is None else names
        return "{" + ", ".join(names[i] for i in sorted(x)) + "}"


# ──────────────────────────── Выбор модели ────────────────────────────

def _parse_table(text: str) -> dict[str, list[int]]:
    """``"app=1,0,abs=0"`` → ``{"app": [1, 0], "abs": [0]}``."""
    table: dict[str, list[int]] = {}
    current: Optional[str] = None
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if "=" in token:
            current, _, token = token.partition("=")
            current = current.strip()
            table[current] = []
        if current is None or not token.strip().isdigit():
            raise ModelError(f"некорректная таблица перестановок {text!r}")
        table[current].append(int(token))
    return table


def parse_model(selector: str, sig2: Signature2, *, fuel: int = _DEFAULT_FUEL) -> Model:
    """Модель по имени: ``syntactic``, ``discrete``, ``chaotic``, ``freevars``,
    ``permuted:<op>=<perm>,...`` (например ``permuted:app=1,0``)."""
    name, _, rest = selector.partition(":")
    name = name.strip()
    if name == "syntactic":
        return SyntacticModel(sig2, fuel)
    if name == "discrete":
        return DiscreteModel(sig2.sig)
    if name == "chaotic":
        return ChaoticModel(sig2.sig)
    if name == "freevars":
        return FreeVarsModel(sig2.sig)
    if name == "permuted":
        return PermutedModel(sig2.sig, _parse_table(rest))
    raise ModelError(
        f"неизвестная модель {selector!r}; доступны: {', '.join(MODEL_NAMES)}"
    )


# ──────────────────────────── Начальный морфизм ────────────────────────────

def init_fold(model: Model[C], n: int, t: Term) -> C:
    """Свёртка терма в модель: переменные — в ``eta``, конструкторы — в операции.

    Обход с явным стеком: глубина терма не ограничена глубиной рекурсии.
    """
    results: list[C] = []
    stack: list[tuple[Term, int, bool]] = [(t, n, False)]
    while stack:
        cur, ctx, ready = stack.pop()
        if isinstance(cur, Var):
            results.append(model.eta(ctx, cur.idx))
            continue
        if ready:
            k = len(cur.args)
            values = tuple(results[len(results) - k:])
            del results[len(results) - k:]
            results.append(model.op(cur.op, ProdElem(cur.op.arity, ctx, values)))
            continue
        stack.append((cur, ctx, True))
        for b, arg in reversed(list(zip(cur.op.arity, cur.args))):
            stack.append((arg, ctx + b, False))
    return results[0]


def fold_map(model: Model[C], f: SubstMap[Term]) -> SubstMap[C]:
    """``f ;; init``: подстановка со значениями в модели."""
    return SubstMap(tuple(init_fold(model, f.target, x) for x in f.images), f.target)


# ──────────────────────────── Законы начального морфизма ────────────────────────────

def check_init_monad_morphism(
    model: Model[C],
    samples: int = 200,
    seed: int = 0,
) -> Report:
    """``init(v >>= f) = kleisli(f ;; init, init v)`` и ``init(rename f x) = rename f (init x)``."""
    from synpy.laws import Law, Outcome, run_laws
    from synpy.sampling import (
        Sample,
        TermAt,
        random_context,
        random_renaming,
        random_subst,
        random_term,
    )

    sig = model.signature

    def gen_kleisli(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = random_context(rng, sig)
        return {"v": TermAt(m, random_term(rng, sig, m)), "f": random_subst(rng, sig, m, n)}

    def check_kleisli(s: Sample) -> Outcome:
        v, f = s["v"], s["f"]
        assert isinstance(v, TermAt) and isinstance(f, SubstMap)
        lhs = init_fold(model, f.target, subst(f, v.term))
        rhs = model.kleisli(fold_map(model, f), init_fold(model, v.ctx, v.term))
        return model.eq(f.target, lhs, rhs), model.render(f.target, lhs), model.render(f.target, rhs)

    def gen_lift(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = rng.randint(1 if m else 0, 3)
        return {"x": TermAt(m, random_term(rng, sig, m)), "f": random_renaming(rng, m, n)}

    def check_lift(s: Sample) -> Outcome:
        x, f = s["x"], s["f"]
        assert isinstance(x, TermAt) and isinstance(f, Renaming)
        lhs = init_fold(model, f.target, rename(f, x.term))
        rhs = model.rename(f, init_fold(model, x.ctx, x.term))
        return model.eq(f.target, lhs, rhs), model.render(f.target, lhs), model.render(f.target, rhs)

    laws = [Law("init-kleisli", gen_kleisli, check_kleisli), Law("init-lift", gen_lift, check_lift)]
    return run_laws(f"init-monad-morphism [{model.selector}]", laws, samples, seed)


def check_init_monotone(
    model: Model[C],
    samples: int = 200,
    seed: int = 0,
    *,
    sig2: Optional[Signature2] = None,
    fuel: Optional[int] = None,
) -> Report:
    """Начальный морфизм монотонен: шаг ``x → y`` в Σ_A даёт ``init x ≤ init y``.

    Сначала проверяется, что модель выполняет все неравенства; иначе отчёт
    помечается неприменимым.  «Неизвестно» от порядка модели считается
    отдельно и нарушением не является.
    """
    from synpy.halfeq import VerdictKind, satisfies
    from synpy import laws
    from synpy.laws import Law, Outcome, run_laws
    from synpy.reduction import sample_step
    from synpy.sampling import Sample, TermAt, random_context

    if sig2 is None:
        if not isinstance(model, SyntacticModel):
            raise ModelError("для проверки монотонности нужна 2-сигнатура")
        sig2 = model.sig2
    title = f"init-monotone [{model.selector}]"
    for ineq in sig2.ineqs:
        verdict = satisfies(model, ineq, samples, seed, fuel)
        if verdict.kind is not VerdictKind.HOLDS:
            log.info("Модель %s: %s — %s", model.selector, ineq.name, verdict.kind.value)
            return laws.Report(
                title,
                applicable=False,
                note=f"модель не выполняет неравенство {ineq.name} ({verdict.kind.value})",
            )

    sig = sig2.sig

    def generate(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        pair = sample_step(rng, sig2, n)
        if pair is None:
            return {}
        x, y = pair
        return {"x": TermAt(n, x), "y": TermAt(n, y)}

    def check(s: Sample) -> Outcome:
        if not s:
            return True, "", ""
        x, y = s["x"], s["y"]
        assert isinstance(x, TermAt) and isinstance(y, TermAt)
        lhs, rhs = init_fold(model, x.ctx, x.term), init_fold(model, y.ctx, y.term)
        answer = model.leq(x.ctx, lhs, rhs, fuel=fuel)
        return answer, model.render(x.ctx, lhs), model.render(y.ctx, rhs)

    return run_laws(title, [Law("init-monotone", generate, check)], samples, seed)
