"""Исполняемые законы: диаграммы монады, модулей и морфизмов представлений.

Каждый закон проверяется на ``samples`` случайных образцах; образец
строится в синтаксисе Σ и переносится в модель начальным морфизмом, так что
законы применимы к любому носителю.  Неудача закона — данные отчёта, а не
исключение.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, TypeVar

from synpy.models import Model, SyntacticModel, fold_map, init_fold
from synpy.modules import ProdElem, prod_compare, prod_eq, prod_map, prod_subst
from synpy.sampling import (
    Sample,
    TermAt,
    describe_sample,
    random_context,
    random_prod,
    random_renaming,
    random_subst,
    random_term,
    sample_seeds,
    shrink_sample,
)
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
    shift,
    subst,
    subst1,
    unit,
)

log = logging.getLogger(__name__)

__all__ = [
    "Failure",
    "LawReport",
    "Report",
    "Law",
    "Outcome",
    "run_law",
    "run_laws",
    "check_monad_laws",
    "check_module_laws",
    "check_rep_morphism",
    "check_order_laws",
    "check_kernel_laws",
]

C = TypeVar("C")

_DEFAULT_SAMPLES = 200
_DEFAULT_SEED = 0
_MAX_FAILURES = 5
_MAX_SHRINK_CHECKS = 500

# (вердикт, левая часть, правая часть); вердикт None означает «неизвестно»
Outcome = tuple[Optional[bool], str, str]


# ──────────────────────────── Отчёты ────────────────────────────

@dataclass
class Failure:
    """Нарушение закона: зерно образца, сам образец и две стороны.

    ``seed`` воспроизводит исходный образец; при ``shrunk`` в ``input`` лежит
    его уменьшенная версия, на которой закон тоже нарушается.
    """
    seed: int
    input: dict[str, str]
    lhs: str
    rhs: str
    shrunk: bool = False

    def to_raw(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "shrunk": self.shrunk,
            "input": self.input,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class LawReport:
    law: str
    samples: int = 0
    failures: list[Failure] = field(default_factory=list)
    unknown: int = 0
    failed: int = 0

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_raw(self) -> dict[str, Any]:
        return {
            "law": self.law,
            "samples": self.samples,
            "failures": [f.to_raw() for f in self.failures],
            "failed": self.failed,
            "unknown": self.unknown,
        }


@dataclass
class Report:
    """Набор законов с общим заголовком (``monad``, ``module [1]`` …)."""
    title: str
    laws: list[LawReport] = field(default_factory=list)
    applicable: bool = True
    note: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def to_raw(self, *, deterministic: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "title": self.title,
            "applicable": self.applicable,
            "passed": self.passed,
            "laws": [law.to_raw() for law in self.laws],
        }
        if self.note:
            data["note"] = self.note
        if not deterministic:
            data["elapsed"] = round(self.elapsed, 3)
        return data

    def format(self, *, deterministic: bool = False) -> str:
        timing = "" if deterministic else f" ({self.elapsed:.2f} с)"
        if not self.applicable:
            return f"{self.title}: неприменимо — {self.note}{timing}"
        lines = [f"{self.title}{timing}"]
        for law in self.laws:
            status = "ok" if law.passed else f"FAIL ({law.failed})"
            extra = f", неизвестно: {law.unknown}" if law.unknown else ""
            lines.append(f"  {law.law}: {status}, образцов: {law.samples}{extra}")
            for failure in law.failures[:1]:
                shrunk = " (образец уменьшен, зерно даёт исходный)" if failure.shrunk else ""
                lines.append(f"    зерно {failure.seed}{shrunk}")
                for key, value in failure.input.items():
                    lines.append(f"    {key} = {value}")
                lines.append(f"    слева:  {failure.lhs}")
                lines.append(f"    справа: {failure.rhs}")
        return "\n".join(lines)


# ──────────────────────────── Прогон законов ────────────────────────────

@dataclass(frozen=True)
class Law:
    """Закон: генератор образца и проверка одного образца."""
    name: str
    generate: Callable[[random.Random], Sample]
    check: Callable[[Sample], Outcome]


def _shrink(law: Law, sample: Sample, outcome: Outcome) -> tuple[Sample, Outcome]:
    """Жадно уменьшает образец, пока закон на нём нарушается."""
    checks = 0
    improved = True
    while improved and checks < _MAX_SHRINK_CHECKS:
        improved = False
        for candidate in shrink_sample(sample):
            checks += 1
            result = law.check(candidate)
            if result[0] is False:
                sample, outcome, improved = candidate, result, True
                break
            if checks >= _MAX_SHRINK_CHECKS:
                break
    return sample, outcome


def run_law(
    law: Law,
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
    *,
    stop_on_failure: bool = False,
) -> LawReport:
    report = LawReport(law.name, samples)
    for sample_seed in sample_seeds(seed, samples):
        sample = law.generate(random.Random(sample_seed))
        outcome = law.check(sample)
        if outcome[0] is None:
            report.unknown += 1
            continue
        if outcome[0]:
            continue
        report.failed += 1
        log.info("Закон %s нарушен, зерно %d", law.name, sample_seed)
        if len(report.failures) < _MAX_FAILURES:
            smaller, outcome = _shrink(law, sample, outcome)
            report.failures.append(Failure(
                sample_seed,
                describe_sample(smaller),
                outcome[1],
                outcome[2],
                shrunk=smaller is not sample,
            ))
        if stop_on_failure:
            break
    log.debug(
        "Закон %s: %d образцов, нарушений %d, неизвестно %d",
        law.name, samples, report.failed, report.unknown,
    )
    return report


def run_laws(title: str, laws: list[Law], samples: int, seed: int) -> Report:
    started = time.perf_counter()
    report = Report(title, [run_law(law, samples, seed) for law in laws])
    report.elapsed = time.perf_counter() - started
    return report


def _term(part: Any) -> TermAt:
    assert isinstance(part, TermAt)
    return part


def _map(part: Any) -> SubstMap:
    assert isinstance(part, SubstMap)
    return part


def _int(part: Any) -> int:
    assert isinstance(part, int)
    return part


def _show(model: Model[C], n: int, x: C) -> str:
    if model.contains(n, x):
        return model.render(n, x)
    return f"{x!r} (вне носителя в контексте {n})"


def _in_carrier(model: Model[C], e: ProdElem[C]) -> bool:
    return all(model.contains(c, v) for c, v in zip(e.contexts(), e.values))


def _compare(model: Model[C], n: int, lhs: C, rhs: C) -> Outcome:
    """Равенство сторон; значение вне носителя модели — нарушение."""
    valid = model.contains(n, lhs) and model.contains(n, rhs)
    return valid and model.eq(n, lhs, rhs), _show(model, n, lhs), _show(model, n, rhs)


def _show_prod(model: Model[C], e: ProdElem[C]) -> str:
    return "(" + ", ".join(_show(model, c, v) for c, v in zip(e.contexts(), e.values)) + ")"


def _compare_prod(model: Model[C], lhs: ProdElem[C], rhs: ProdElem[C]) -> Outcome:
    valid = _in_carrier(model, lhs) and _in_carrier(model, rhs)
    return valid and prod_eq(model, lhs, rhs), _show_prod(model, lhs), _show_prod(model, rhs)


def _folded(model: Model[C], e: ProdElem[Term]) -> ProdElem[C]:
    return prod_map(lambda c, v: init_fold(model, c, v), e)


def _units(model: Model[C], n: int) -> SubstMap[C]:
    return SubstMap(tuple(model.eta(n, i) for i in range(n)), n)


# ──────────────────────────── Монада ────────────────────────────

def monad_laws(model: Model[C]) -> list[Law]:
    sig = model.signature

    def gen_unit(rng: random.Random) -> Sample:
        m = rng.randint(1, 3)
        n = random_context(rng, sig)
        return {"i": rng.randrange(m), "f": random_subst(rng, sig, m, n)}

    def check_unit(s: Sample) -> Outcome:
        f, i = _map(s["f"]), _int(s["i"])
        mf = fold_map(model, f)
        lhs = model.kleisli(mf, model.eta(f.source, i))
        return _compare(model, f.target, lhs, mf.images[i])

    def gen_term(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        return {"x": TermAt(m, random_term(rng, sig, m))}

    def check_identity(s: Sample) -> Outcome:
        x = _term(s["x"])
        mx = init_fold(model, x.ctx, x.term)
        return _compare(model, x.ctx, model.kleisli(_units(model, x.ctx), mx), mx)

    def gen_assoc(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = random_context(rng, sig)
        p = random_context(rng, sig)
        return {
            "x": TermAt(m, random_term(rng, sig, m, 5)),
            "f": random_subst(rng, sig, m, n),
            "g": random_subst(rng, sig, n, p),
        }

    def check_assoc(s: Sample) -> Outcome:
        x, f, g = _term(s["x"]), _map(s["f"]), _map(s["g"])
        mx, mf, mg = init_fold(model, x.ctx, x.term), fold_map(model, f), fold_map(model, g)
        lhs = model.kleisli(mg, model.kleisli(mf, mx))
        fg = SubstMap(tuple(model.kleisli(mg, y) for y in mf.images), g.target)
        return _compare(model, g.target, lhs, model.kleisli(fg, mx))

    def gen_rename(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = rng.randint(1 if m else 0, 3)
        return {"x": TermAt(m, random_term(rng, sig, m)), "r": random_renaming(rng, m, n)}

    def check_rename(s: Sample) -> Outcome:
        x, r = _term(s["x"]), s["r"]
        assert isinstance(r, Renaming)
        mx = init_fold(model, x.ctx, x.term)
        via_eta = SubstMap(tuple(model.eta(r.target, j) for j in r.images), r.target)
        return _compare(model, r.target, model.rename(r, mx), model.kleisli(via_eta, mx))

    return [
        Law("unit", gen_unit, check_unit),
        Law("identity", gen_term, check_identity),
        Law("associativity", gen_assoc, check_assoc),
        Law("rename-as-kleisli", gen_rename, check_rename),
    ]


def check_monad_laws(
    model: Model[C],
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
) -> Report:
    """Три диаграммы относительной монады и переименование как подстановка."""
    return run_laws(f"monad [{model.selector}]", monad_laws(model), samples, seed)


# ──────────────────────────── Модули ────────────────────────────

def check_module_laws(
    model: Model[C],
    desc: tuple[int, ...],
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
) -> Report:
    """Единица и ассоциативность действия подстановки на ``R^desc``."""
    sig = model.signature
    desc = tuple(desc)

    def gen_unit(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        return {"e": random_prod(rng, sig, desc, m, 5)}

    def check_unit(s: Sample) -> Outcome:
        e = s["e"]
        assert isinstance(e, ProdElem)
        me = _folded(model, e)
        return _compare_prod(model, prod_subst(model, desc, _units(model, e.ctx), me), me)

    def gen_assoc(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = random_context(rng, sig)
        p = random_context(rng, sig)
        return {
            "e": random_prod(rng, sig, desc, m, 4),
            "f": random_subst(rng, sig, m, n),
            "g": random_subst(rng, sig, n, p),
        }

    def check_assoc(s: Sample) -> Outcome:
        e, f, g = s["e"], _map(s["f"]), _map(s["g"])
        assert isinstance(e, ProdElem)
        me, mf, mg = _folded(model, e), fold_map(model, f), fold_map(model, g)
        lhs = prod_subst(model, desc, mg, prod_subst(model, desc, mf, me))
        fg = SubstMap(tuple(model.kleisli(mg, y) for y in mf.images), g.target)
        return _compare_prod(model, lhs, prod_subst(model, desc, fg, me))

    title = f"module {list(desc)} [{model.selector}]"
    laws = [
        Law("module-unit", gen_unit, check_unit),
        Law("module-associativity", gen_assoc, check_assoc),
    ]
    return run_laws(title, laws, samples, seed)


# ──────────────────────────── Морфизм представлений ────────────────────────────

def check_rep_morphism(
    model: Model[C],
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
) -> Report:
    """``init(s^Σ(e)) = s^R(init(e))`` для каждой операции сигнатуры.

    Операция модели обязана давать значения носителя и быть морфизмом
    модулей: ``s^R(e)[f] = s^R(e[f])``.  Иначе ``R`` не представление, и
    равенство для ``init`` теряет смысл.
    """
    sig = model.signature
    laws = []
    for op in sig:
        label = f"{op.name}{list(op.arity)}"

        def gen(rng: random.Random, arity: tuple[int, ...] = op.arity) -> Sample:
            n = random_context(rng, sig)
            return {"e": random_prod(rng, sig, arity, n, 5)}

        def check(s: Sample, op: Operation = op) -> Outcome:
            e = s["e"]
            assert isinstance(e, ProdElem)
            lhs = init_fold(model, e.ctx, Con(op, e.values))
            rhs = model.op(op, _folded(model, e))
            return _compare(model, e.ctx, lhs, rhs)

        def gen_subst(rng: random.Random, arity: tuple[int, ...] = op.arity) -> Sample:
            m = random_context(rng, sig)
            n = random_context(rng, sig)
            return {"e": random_prod(rng, sig, arity, m, 4), "f": random_subst(rng, sig, m, n)}

        def check_subst(s: Sample, op: Operation = op) -> Outcome:
            e, f = s["e"], _map(s["f"])
            assert isinstance(e, ProdElem)
            me, mf = _folded(model, e), fold_map(model, f)
            inner = model.op(op, me)
            images_valid = all(model.contains(f.target, y) for y in mf.images)
            if not (_in_carrier(model, me) and images_valid and model.contains(e.ctx, inner)):
                return False, _show(model, e.ctx, inner), "значения вне носителя"
            lhs = model.op(op, prod_subst(model, op.arity, mf, me))
            return _compare(model, f.target, lhs, model.kleisli(mf, inner))

        laws.append(Law(f"rep-morphism:{label}", gen, check))
        laws.append(Law(f"rep-module-morphism:{label}", gen_subst, check_subst))
    return run_laws(f"rep-morphism [{model.selector}]", laws, samples, seed)


# ──────────────────────────── Порядок ────────────────────────────

def check_order_laws(
    model: Model[C],
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
    *,
    sig2: Optional[Signature2] = None,
) -> Report:
    """Порядок модели — предпорядок, покомпонентный тоже; операции монотонны.

    Пары и цепочки ``x → y → z`` строятся шагами редукции по ``sig2``
    (для синтаксической модели — по её 2-сигнатуре).  Без неравенств берутся
    независимые случайные термы: посылки законов тогда выполняются реже.
    Невыполненная посылка засчитывается как выполненный закон.
    """
    from synpy.reduction import sample_step, step

    sig = model.signature
    if sig2 is None and isinstance(model, SyntacticModel):
        sig2 = model.sig2
    arities = sorted({op.arity for op in sig})

    def related(rng: random.Random, n: int) -> tuple[Term, Term]:
        if sig2 is not None:
            pair = sample_step(rng, sig2, n)
            if pair is not None:
                return pair
        return random_term(rng, sig, n, 5), random_term(rng, sig, n, 5)

    def after(rng: random.Random, n: int, t: Term) -> Term:
        if sig2 is not None:
            successors = step(sig2, n, t)
            if successors:
                return rng.choice(successors)
        return random_term(rng, sig, n, 5)

    def gen_term(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        return {"x": TermAt(n, random_term(rng, sig, n, 5))}

    def check_reflexive(s: Sample) -> Outcome:
        x = _term(s["x"])
        a = init_fold(model, x.ctx, x.term)
        shown = _show(model, x.ctx, a)
        return model.leq(x.ctx, a, a), shown, shown

    def gen_chain(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        x, y = related(rng, n)
        return {"x": TermAt(n, x), "y": TermAt(n, y), "z": TermAt(n, after(rng, n, y))}

    def check_transitive(s: Sample) -> Outcome:
        x, y, z = _term(s["x"]), _term(s["y"]), _term(s["z"])
        n = x.ctx
        a, b, c = (init_fold(model, n, t.term) for t in (x, y, z))
        if model.leq(n, a, b) is not True or model.leq(n, b, c) is not True:
            return True, "", ""
        return model.leq(n, a, c), _show(model, n, a), _show(model, n, c)

    def gen_prod(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        return {"e": random_prod(rng, sig, rng.choice(arities), n, 4)}

    def check_prod_reflexive(s: Sample) -> Outcome:
        e = s["e"]
        assert isinstance(e, ProdElem)
        me = _folded(model, e)
        shown = _show_prod(model, me)
        return prod_compare(model, e.desc, me, me), shown, shown

    def gen_prod_chain(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        desc = rng.choice(arities)
        chains = []
        for depth in desc:
            x, y = related(rng, n + depth)
            chains.append((x, y, after(rng, n + depth, y)))
        a, b, c = (ProdElem(desc, n, tuple(ch[i] for ch in chains)) for i in range(3))
        return {"a": a, "b": b, "c": c}

    def check_prod_transitive(s: Sample) -> Outcome:
        a, b, c = s["a"], s["b"], s["c"]
        assert isinstance(a, ProdElem) and isinstance(b, ProdElem) and isinstance(c, ProdElem)
        ma, mb, mc = _folded(model, a), _folded(model, b), _folded(model, c)
        if prod_compare(model, a.desc, ma, mb) is not True:
            return True, "", ""
        if prod_compare(model, a.desc, mb, mc) is not True:
            return True, "", ""
        return prod_compare(model, a.desc, ma, mc), _show_prod(model, ma), _show_prod(model, mc)

    laws = [
        Law("leq-reflexive", gen_term, check_reflexive),
        Law("leq-transitive", gen_chain, check_transitive),
    ]
    if arities:
        laws += [
            Law("prod-leq-reflexive", gen_prod, check_prod_reflexive),
            Law("prod-leq-transitive", gen_prod_chain, check_prod_transitive),
        ]

    for op in sig:
        if not op.arity:
            continue

        # кортежи lo ≤ hi различаются одной компонентой: x → y
        def gen_mono(rng: random.Random, arity: tuple[int, ...] = op.arity) -> Sample:
            n = random_context(rng, sig)
            k = rng.randrange(len(arity))
            values = list(random_prod(rng, sig, arity, n, 4).values)
            x, y = related(rng, n + arity[k])
            values[k] = x
            lo = ProdElem(arity, n, tuple(values))
            values[k] = y
            return {"lo": lo, "hi": ProdElem(arity, n, tuple(values))}

        def check_mono(s: Sample, op: Operation = op) -> Outcome:
            lo, hi = s["lo"], s["hi"]
            assert isinstance(lo, ProdElem) and isinstance(hi, ProdElem)
            mlo, mhi = _folded(model, lo), _folded(model, hi)
            if prod_compare(model, op.arity, mlo, mhi) is not True:
                return True, "", ""
            a, b = model.op(op, mlo), model.op(op, mhi)
            return model.leq(lo.ctx, a, b), _show(model, lo.ctx, a), _show(model, lo.ctx, b)

        laws.append(Law(f"op-monotone:{op.name}", gen_mono, check_mono))
    return run_laws(f"order [{model.selector}]", laws, samples, seed)


# ──────────────────────────── Ядро ────────────────────────────

def check_kernel_laws(
    sig: Signature1,
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
) -> Report:
    """Законы ядра термов, не зависящие от модели."""

    def show(n: int, t: Any) -> str:
        return format_term(t, default_context(n))

    def gen_rename(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = rng.randint(1 if m else 0, 3)
        return {"x": TermAt(m, random_term(rng, sig, m)), "r": random_renaming(rng, m, n)}

    def check_rename(s: Sample) -> Outcome:
        x, r = _term(s["x"]), s["r"]
        assert isinstance(r, Renaming)
        lhs = rename(r, x.term)
        rhs = subst(SubstMap(tuple(Var(j) for j in r.images), r.target), x.term)
        return lhs == rhs, show(r.target, lhs), show(r.target, rhs)

    def gen_shift(rng: random.Random) -> Sample:
        return {"n": rng.randint(0, 4), "k": rng.randint(0, 3)}

    def check_shift(s: Sample) -> Outcome:
        n, k = _int(s["n"]), _int(s["k"])
        lhs, rhs = shift(unit(n), k), unit(n + k)
        return lhs == rhs, repr(lhs.images), repr(rhs.images)

    def gen_subst1(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        return {
            "body": TermAt(n + 1, random_term(rng, sig, n + 1)),
            "arg": TermAt(n, random_term(rng, sig, n, 4)),
        }

    def check_subst1(s: Sample) -> Outcome:
        body, arg = _term(s["body"]), _term(s["arg"])
        n = arg.ctx
        lhs = subst1(body.term, arg.term, n)
        rhs = subst(SubstMap(unit(n).images + (arg.term,), n), body.term)
        return lhs == rhs, show(n, lhs), show(n, rhs)

    def gen_scope(rng: random.Random) -> Sample:
        m = random_context(rng, sig)
        n = random_context(rng, sig)
        return {"x": TermAt(m, random_term(rng, sig, m)), "f": random_subst(rng, sig, m, n)}

    def check_scope(s: Sample) -> Outcome:
        x, f = _term(s["x"]), _map(s["f"])
        result = subst(f, x.term)
        return scope_check(f.target, result), show(f.target, result), f"контекст {f.target}"

    laws = [
        Law("kernel-rename-as-kleisli", gen_rename, check_rename),
        Law("shift-preserves-unit", gen_shift, check_shift),
        Law("subst1-vs-parallel-subst", gen_subst1, check_subst1),
        Law("subst-preserves-scope", gen_scope, check_scope),
    ]
    return run_laws("kernel", laws, samples, seed)
