"""Вычисление полуравенств в модели и проверка неравенств.

``eval_hexp`` интерпретирует выражение над любой моделью: подстановка,
ослабление и свежая переменная выражаются через ``eta``, ``kleisli`` и
``rename`` модели.
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass
from typing import Any, Optional, TypeVar

from synpy.exceptions import ShapeError
from synpy.hexp import (
    Bang,
    Comp,
    Ctor,
    Deriv,
    Fresh,
    HExp,
    Id,
    Pair,
    Proj,
    Subst1,
    Weaken,
    shape_check,
)
from synpy.laws import Failure, Law, Outcome, Report, run_law, run_laws
from synpy.models import DiscreteModel, Model, init_fold
from synpy.modules import ProdElem, prod_eq, prod_map
from synpy.sampling import Sample, random_context, random_prod
from synpy.signature import Inequation

log = logging.getLogger(__name__)

__all__ = [
    "eval_hexp",
    "VerdictKind",
    "Verdict",
    "satisfies",
    "naturality_check",
]

C = TypeVar("C")

_DEFAULT_SAMPLES = 200
_DEFAULT_SEED = 0
_SAMPLE_DEPTH = 5


def _fmt(d: tuple[int, ...]) -> str:
    return "[" + ",".join(str(x) for x in d) + "]"


def _eval(model: Model[C], e: HExp, x: ProdElem[C], path: tuple[str, ...]) -> ProdElem[C]:
    n, desc = x.ctx, x.desc
    if isinstance(e, Id):
        if e.desc is not None and e.desc != desc:
            raise ShapeError(path, _fmt(e.desc), _fmt(desc))
        return x
    if isinstance(e, Comp):
        mid = _eval(model, e.first, x, path + ("comp.first",))
        return _eval(model, e.then, mid, path + ("comp.then",))
    if isinstance(e, Pair):
        parts = [_eval(model, c, x, path + (f"pair.{k}",)) for k, c in enumerate(e.components)]
        return ProdElem(
            tuple(s for p in parts for s in p.desc), n, tuple(v for p in parts for v in p.values),
        )
    if isinstance(e, Proj):
        if not 0 <= e.j < len(desc):
            raise ShapeError(path, f"индекс меньше {len(desc)}", e.j)
        return ProdElem((desc[e.j],), n, (x.values[e.j],))
    if isinstance(e, Ctor):
        op = model.signature.get(e.op)
        if op is None:
            raise ShapeError(path, "операция сигнатуры", repr(e.op))
        if desc != op.arity:
            raise ShapeError(path, _fmt(op.arity), _fmt(desc))
        return ProdElem((0,), n, (model.op(op, x),))
    if isinstance(e, Subst1):
        if desc != (1, 0):
            raise ShapeError(path, "[1,0]", _fmt(desc))
        body, arg = x.values
        return ProdElem((0,), n, (model.subst1(n, body, arg),))
    if isinstance(e, Weaken):
        if len(desc) != 1:
            raise ShapeError(path, "[n]", _fmt(desc))
        s = desc[0]
        return ProdElem((s + 1,), n, (model.weaken(n + s, x.values[0]),))
    if isinstance(e, Fresh):
        if desc != ():
            raise ShapeError(path, "[]", _fmt(desc))
        return ProdElem((1,), n, (model.eta(n + 1, n),))
    if isinstance(e, Bang):
        if e.desc is not None and e.desc != desc:
            raise ShapeError(path, _fmt(e.desc), _fmt(desc))
        return ProdElem((), n, ())
    if isinstance(e, Deriv):
        if any(s < 1 for s in desc):
            raise ShapeError(path, "все слоты ≥ 1", _fmt(desc))
        inner = ProdElem(tuple(s - 1 for s in desc), n + 1, x.values)
        out = _eval(model, e.inner, inner, path + ("deriv",))
        return ProdElem(tuple(s + 1 for s in out.desc), n, out.values)
    raise TypeError(f"не полуравенство: {e!r}")


def eval_hexp(model: Model[C], e: HExp, x: ProdElem[C]) -> ProdElem[C]:
    """Значение полуравенства ``e`` на кортеже ``x`` из модели.

    ``Deriv`` вычисляет внутреннее выражение в контексте ``n+1``: кортеж
    ``R^{s+1}(n)`` совпадает с ``R^{s}(n+1)`` поэлементно.
    """
    return _eval(model, e, x, ())


# ──────────────────────────── Выполнимость ────────────────────────────

class VerdictKind(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    inequation: str
    model: str
    samples: int
    unknown: int = 0
    witness: Optional[Failure] = None

    def to_raw(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "verdict": self.kind.value,
            "inequation": self.inequation,
            "model": self.model,
            "samples": self.samples,
            "unknown": self.unknown,
        }
        if self.witness is not None:
            data["witness"] = self.witness.to_raw()
        return data


def _show(model: Model[C], e: ProdElem[C]) -> str:
    values = [model.render(c, v) for c, v in zip(e.contexts(), e.values)]
    return values[0] if len(values) == 1 else "(" + ", ".join(values) + ")"


def _folded(model: Model[C], e: ProdElem) -> ProdElem[C]:
    return prod_map(lambda c, v: init_fold(model, c, v), e)


def satisfies(
    model: Model[C],
    ineq: Inequation,
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
    fuel: Optional[int] = None,
) -> Verdict:
    """Выполняется ли ``lhs ≤ rhs`` в модели на случайных кортежах.

    Кортежи строятся в синтаксисе и переносятся в модель начальным
    морфизмом.  ``violated`` побеждает ``inconclusive``, тот — ``holds``;
    свидетель — первый нарушающий образец (после уменьшения).
    """
    sig = model.signature

    def generate(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        return {"x": random_prod(rng, sig, ineq.dom, n, _SAMPLE_DEPTH)}

    def check(s: Sample) -> Outcome:
        x = s["x"]
        assert isinstance(x, ProdElem)
        mx = _folded(model, x)
        lhs = eval_hexp(model, ineq.lhs, mx)
        rhs = eval_hexp(model, ineq.rhs, mx)
        answer = model.leq(lhs.contexts()[0], lhs.values[0], rhs.values[0], fuel=fuel)
        return answer, _show(model, lhs), _show(model, rhs)

    report = run_law(Law(ineq.name, generate, check), samples, seed, stop_on_failure=True)
    if report.failures:
        kind = VerdictKind.VIOLATED
    elif report.unknown:
        kind = VerdictKind.INCONCLUSIVE
    else:
        kind = VerdictKind.HOLDS
    log.debug("%s в модели %s: %s", ineq.name, model.selector, kind.value)
    return Verdict(
        kind,
        ineq.name,
        model.selector,
        samples,
        report.unknown,
        report.failures[0] if report.failures else None,
    )


# ──────────────────────────── Естественность ────────────────────────────

def naturality_check(
    e: HExp,
    model: Model[C],
    samples: int = _DEFAULT_SAMPLES,
    seed: int = _DEFAULT_SEED,
    dom: Optional[tuple[int, ...]] = None,
    *,
    name: str = "naturality",
) -> Report:
    """``init ∘ e^Σ = e^R ∘ init``: полуравенство коммутирует с начальным морфизмом."""
    sig = model.signature
    dom = shape_check(sig, e, dom).dom
    syntax = DiscreteModel(sig)

    def generate(rng: random.Random) -> Sample:
        n = random_context(rng, sig)
        return {"x": random_prod(rng, sig, dom, n, _SAMPLE_DEPTH)}

    def check(s: Sample) -> Outcome:
        x = s["x"]
        assert isinstance(x, ProdElem)
        lhs = _folded(model, eval_hexp(syntax, e, x))
        rhs = eval_hexp(model, e, _folded(model, x))
        return prod_eq(model, lhs, rhs), _show(model, lhs), _show(model, rhs)

    return run_laws(f"{name} [{model.selector}]", [Law(name, generate, check)], samples, seed)
