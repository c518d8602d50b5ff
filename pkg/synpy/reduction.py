"""Редукции начального представления Σ_A.

Один шаг — замена подтерма-экземпляра стороны-образца неравенства на
соответствующий экземпляр другой стороны, в любой позиции (замыкание по
конгруэнции).  Предпорядок ``leq`` — рефлексивно-транзитивное замыкание
шагов, проверяемое поиском в ширину с ограничением по топливу.
"""

from __future__ import annotations

import functools
import logging
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterator, Literal, Optional, Sequence, Union

from synpy.halfeq import eval_hexp
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
    Weaken,
    codomain,
)
from synpy.models import DiscreteModel
from synpy.modules import ProdElem
from synpy.sampling import random_prod, random_term
from synpy.signature import Signature1, Signature2
from synpy.syntax import format_term
from synpy.terms import Con, Term, Var, strengthen

log = logging.getLogger(__name__)

__all__ = [
    "Position",
    "Redex",
    "TraceEntry",
    "NormalForm",
    "FuelExhausted",
    "Search",
    "Strategy",
    "STRATEGIES",
    "match_pattern",
    "redexes",
    "contract",
    "step",
    "search",
    "leq",
    "normalize",
    "sample_step",
    "trace_records",
]

_DEFAULT_FUEL = 1000

Strategy = Literal["outermost", "innermost", "leftmost"]
STRATEGIES: tuple[str, ...] = ("outermost", "innermost", "leftmost")


# ──────────────────────────── Типы ────────────────────────────

@dataclass(frozen=True, order=True)
class Position:
    """Путь от корня: номера аргументов."""
    path: tuple[int, ...] = ()

    def __str__(self) -> str:
        return ".".join(str(k) for k in self.path) or "root"


@dataclass(frozen=True)
class Redex:
    """Экземпляр стороны-образца неравенства ``ineq`` в позиции ``pos``.

    ``binding`` — кортеж из ``Σ^{dom}`` в контексте ``ctx - k`` (``k`` —
    кодомен образца), ``ctx`` — контекст подтерма.
    """
    pos: Position
    ineq: str
    binding: ProdElem[Term]
    ctx: int


@dataclass(frozen=True)
class TraceEntry:
    term: Term
    redex: Optional[Redex] = None


@dataclass(frozen=True)
class NormalForm:
    term: Term
    trace: tuple[TraceEntry, ...]

    @property
    def steps(self) -> int:
        return len(self.trace) - 1


@dataclass(frozen=True)
class FuelExhausted:
    term: Term
    trace: tuple[TraceEntry, ...]

    @property
    def steps(self) -> int:
        return len(self.trace) - 1


@dataclass(frozen=True)
class Search:
    """Результат поиска ``x ↠ y``.

    ``exhausted`` — фронт опустел: из ``x`` достижимо ровно ``visited``
    термов, и ``y`` среди них нет.
    """
    found: bool
    path: tuple[Term, ...]
    expanded: int
    visited: int
    exhausted: bool


# ──────────────────────────── Сопоставление ────────────────────────────

@functools.lru_cache(maxsize=4096)
def _cod(sig: Signature1, e: HExp, dom: tuple[int, ...]) -> tuple[int, ...]:
    return codomain(sig, e, dom)


Slots = list[Optional[Term]]


def _match(
    sig: Signature1,
    e: HExp,
    dom: tuple[int, ...],
    base: int,
    out: Sequence[Optional[Term]],
) -> Optional[Slots]:
    """Обратное вычисление образца: значения слотов домена по значениям кодомена.

    ``None`` внутри результата — слот не восстановлен (под ``bang``),
    ``None`` вместо результата — терм не сопоставляется.
    """
    if isinstance(e, Id):
        return list(out)
    if isinstance(e, Comp):
        mid = _cod(sig, e.first, dom)
        inner = _match(sig, e.then, mid, base, out)
        if inner is None:
            return None
        return _match(sig, e.first, dom, base, inner)
    if isinstance(e, Pair):
        slots: Slots = [None] * len(dom)
        offset = 0
        for c in e.components:
            width = len(_cod(sig, c, dom))
            part = _match(sig, c, dom, base, out[offset:offset + width])
            if part is None:
                return None
            for k, value in enumerate(part):
                if value is None:
                    continue
                if slots[k] is not None and slots[k] != value:
                    return None
                slots[k] = value
            offset += width
        return slots
    if isinstance(e, Proj):
        slots = [None] * len(dom)
        slots[e.j] = out[0]
        return slots
    if isinstance(e, Bang):
        return [None] * len(dom)
    t = out[0] if out else None
    if isinstance(e, Ctor):
        if t is None:
            return [None] * len(dom)
        if not isinstance(t, Con) or t.op.name != e.op:
            return None
        return list(t.args)
    if isinstance(e, Weaken):
        if t is None:
            return [None]
        lowered = strengthen(t, base + dom[0])
        return None if lowered is None else [lowered]
    if isinstance(e, Fresh):
        if t is not None and t != Var(base):
            return None
        return []
    if isinstance(e, Deriv):
        return _match(sig, e.inner, tuple(s - 1 for s in dom), base + 1, out)
    return None


def match_pattern(
    sig: Signature1,
    pattern: HExp,
    dom: tuple[int, ...],
    t: Term,
    n: int,
) -> Optional[ProdElem[Term]]:
    """Разбирает терм ``t`` из контекста ``n`` по образцу.

    Образец с кодоменом ``[k]`` сопоставляется с термом из ``base + k``;
    найденный кортеж лежит в ``Σ^{dom}(base)`` и при вычислении образца на
    нём даёт ровно ``t``.
    """
    (k,) = _cod(sig, pattern, tuple(dom))
    base = n - k
    if base < 0:
        return None
    slots = _match(sig, pattern, tuple(dom), base, (t,))
    if slots is None or any(v is None for v in slots):
        return None
    return ProdElem(tuple(dom), base, tuple(v for v in slots if v is not None))


# ──────────────────────────── Редексы ────────────────────────────

def _positions(t: Term, n: int) -> Iterator[tuple[Position, Term, int]]:
    """Позиции в порядке обхода в ширину: снаружи внутрь, слева направо."""
    queue: deque[tuple[tuple[int, ...], Term, int]] = deque([((), t, n)])
    while queue:
        path, cur, ctx = queue.popleft()
        yield Position(path), cur, ctx
        if isinstance(cur, Con):
            for k, (b, arg) in enumerate(zip(cur.op.arity, cur.args)):
                queue.append((path + (k,), arg, ctx + b))


def redexes(sig2: Signature2, n: int, t: Term) -> list[Redex]:
    """Все редексы ``t``: снаружи внутрь, слева направо, затем по порядку неравенств."""
    found = []
    for pos, sub, ctx in _positions(t, n):
        for ineq in sig2.ineqs:
            binding = match_pattern(sig2.sig, ineq.pattern, ineq.dom, sub, ctx)
            if binding is not None:
                found.append(Redex(pos, ineq.name, binding, ctx))
    return found


def _replace(t: Term, path: tuple[int, ...], new: Term) -> Term:
    spine: list[tuple[Con, int]] = []
    for k in path:
        assert isinstance(t, Con)
        spine.append((t, k))
        t = t.args[k]
    for node, k in reversed(spine):
        new = Con(node.op, node.args[:k] + (new,) + node.args[k + 1:])
    return new


def contract(sig2: Signature2, t: Term, redex: Redex) -> Term:
    """Заменяет редекс на значение стороны-результата на его кортеже."""
    ineq = sig2.ineq(redex.ineq)
    value = eval_hexp(DiscreteModel(sig2.sig), ineq.contractum, redex.binding)
    return _replace(t, redex.pos.path, value.values[0])


def _successors(sig2: Signature2, n: int, t: Term) -> list[tuple[Redex, Term]]:
    return [(r, contract(sig2, t, r)) for r in redexes(sig2, n, t)]


def step(sig2: Signature2, n: int, t: Term) -> list[Term]:
    """Все термы, получаемые из ``t`` одним шагом, без повторов."""
    seen: dict[Term, None] = {}
    for _, result in _successors(sig2, n, t):
        seen.setdefault(result, None)
    return list(seen)


# ──────────────────────────── Предпорядок ────────────────────────────

def search(sig2: Signature2, n: int, x: Term, y: Term, fuel: int = _DEFAULT_FUEL) -> Search:
    """Поиск в ширину ``x ↠ y``; топливо — число раскрытых термов."""
    if x == y:
        return Search(True, (x,), 0, 1, False)
    parent: dict[Term, Optional[Term]] = {x: None}
    frontier: deque[Term] = deque([x])
    expanded = 0
    while frontier and expanded < fuel:
        cur = frontier.popleft()
        expanded += 1
        for nxt in step(sig2, n, cur):
            if nxt in parent:
                continue
            parent[nxt] = cur
            if nxt == y:
                path = [nxt]
                back = parent[nxt]
                while back is not None:
                    path.append(back)
                    back = parent[back]
                path.reverse()
                _verify_path(sig2, n, path)
                return Search(True, tuple(path), expanded, len(parent), False)
            frontier.append(nxt)
    return Search(False, (), expanded, len(parent), not frontier)


def _verify_path(sig2: Signature2, n: int, path: Sequence[Term]) -> None:
    for a, b in zip(path, path[1:]):
        if b not in step(sig2, n, a):
            raise RuntimeError("путь редукций не подтвердился повторной проверкой")


def leq(
    sig2: Signature2, n: int, x: Term, y: Term, fuel: int = _DEFAULT_FUEL,
) -> Optional[bool]:
    """``True``, если найден путь редукций ``x ↠ y``; иначе ``None`` (неизвестно)."""
    return True if search(sig2, n, x, y, fuel).found else None


# ──────────────────────────── Нормализация ────────────────────────────

def _ordered(found: list[Redex], strategy: str) -> list[Redex]:
    if strategy == "outermost":
        return found
    if strategy == "innermost":
        return sorted(found, key=lambda r: -len(r.pos.path))
    if strategy == "leftmost":
        return sorted(found, key=lambda r: r.pos.path)
    raise ValueError(f"неизвестная стратегия {strategy!r}; доступны: {', '.join(STRATEGIES)}")


def normalize(
    sig2: Signature2,
    n: int,
    t: Term,
    strategy: str = "outermost",
    fuel: int = _DEFAULT_FUEL,
) -> Union[NormalForm, FuelExhausted]:
    """Сворачивает по одному редексу, выбранному стратегией, пока редексы есть.

    Редексы, сворачивающиеся в себя же, выбираются только когда других нет.
    Топливо — число сверток.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"неизвестная стратегия {strategy!r}; доступны: {', '.join(STRATEGIES)}")
    trace = [TraceEntry(t)]
    cur = t
    for _ in range(fuel):
        choice: Optional[tuple[Redex, Term]] = None
        for redex in _ordered(redexes(sig2, n, cur), strategy):
            result = contract(sig2, cur, redex)
            if result != cur:
                choice = (redex, result)
                break
            if choice is None:
                choice = (redex, result)
        if choice is None:
            return NormalForm(cur, tuple(trace))
        redex, cur = choice
        log.debug("Шаг %d: %s в позиции %s", len(trace), redex.ineq, redex.pos)
        trace.append(TraceEntry(cur, redex))
    if not redexes(sig2, n, cur):
        return NormalForm(cur, tuple(trace))
    log.info("Топливо исчерпано после %d шагов", fuel)
    return FuelExhausted(cur, tuple(trace))


def trace_records(
    sig2: Signature2, trace: Sequence[TraceEntry], context: Sequence[str],
) -> Iterator[dict[str, Any]]:
    """Записи трассы для вывода построчным JSON."""
    for k, entry in enumerate(trace):
        yield {
            "step": k,
            "position": str(entry.redex.pos) if entry.redex else None,
            "inequation": entry.redex.ineq if entry.redex else None,
            "term": format_term(entry.term, context),
        }


# ──────────────────────────── Случайные шаги ────────────────────────────

def sample_step(
    rng: random.Random,
    sig2: Signature2,
    n: int,
    depth: int = 5,
) -> Optional[tuple[Term, Term]]:
    """Случайная пара ``x → y`` в один шаг в контексте ``n``.

    Сначала пробует случайный терм; если в нём нет редексов, строит
    экземпляр неравенства из случайного кортежа.  ``None`` — неравенств,
    применимых в контексте ``n``, нет.
    """
    sig = sig2.sig
    t = random_term(rng, sig, n, depth)
    successors = _successors(sig2, n, t)
    if successors:
        return t, rng.choice(successors)[1]
    usable = [i for i in sig2.ineqs if i.cod(sig)[0] <= n]
    if not usable:
        return None
    ineq = rng.choice(usable)
    base = n - ineq.cod(sig)[0]
    binding = random_prod(rng, sig, ineq.dom, base, depth)
    syntax = DiscreteModel(sig)
    x = eval_hexp(syntax, ineq.pattern, binding).values[0]
    y = eval_hexp(syntax, ineq.contractum, binding).values[0]
    return x, y
