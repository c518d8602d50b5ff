"""Случайные термы, подстановки и кортежи для проверок законов.

Каждый образец строится из собственного ``random.Random(seed)``, поэтому
любая найденная ошибка воспроизводится по одному числу.  Образец — словарь
именованных частей; части-термы умеют уменьшаться (shrinking).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from synpy.exceptions import SamplingError
from synpy.modules import ProdElem
from synpy.signature import Operation, Signature1
from synpy.syntax import default_context, format_term
from synpy.terms import Con, Renaming, SubstMap, Term, Var, strengthen

log = logging.getLogger(__name__)

__all__ = [
    "TermAt",
    "Part",
    "Sample",
    "closing_ops",
    "random_context",
    "random_term",
    "random_renaming",
    "random_subst",
    "random_prod",
    "sample_seeds",
    "shrink_term",
    "shrink_sample",
    "describe_sample",
]

_DEFAULT_DEPTH = 7
_MAX_CONTEXT = 3


@dataclass(frozen=True)
class TermAt:
    """Терм вместе с контекстом, в котором он лежит."""
    ctx: int
    term: Term


Part = Union[TermAt, SubstMap[Term], Renaming, ProdElem[Term], int]
Sample = dict[str, Part]


def sample_seeds(seed: int, samples: int) -> list[int]:
    """По одному 32-битному зерну на образец из главного генератора."""
    master = random.Random(seed)
    return [master.getrandbits(32) for _ in range(samples)]


# ──────────────────────────── Генерация ────────────────────────────

def closing_ops(sig: Signature1) -> list[Operation]:
    """Операции, все аргументы которых связывают переменные (или их нет).

    Только они строят термы в пустом контексте без подтермов в нём же.
    """
    return [op for op in sig if all(b > 0 for b in op.arity)]


def random_context(rng: random.Random, sig: Signature1, high: int = _MAX_CONTEXT) -> int:
    """Контекст от 0 (или 1, если замкнутых термов нет) до ``high``."""
    low = 0 if closing_ops(sig) else 1
    return rng.randint(low, max(low, high))


def random_term(
    rng: random.Random,
    sig: Signature1,
    n: int,
    depth: int = _DEFAULT_DEPTH,
) -> Term:
    """Корректный по областям видимости терм в контексте ``n``.

    Вероятность выбрать переменную ``1/(budget+1)`` растёт по мере убывания
    бюджета глубины; на нулевом бюджете в пустом контексте годятся только
    замыкающие операции.
    """
    ops = list(sig)
    closing = closing_ops(sig)
    if n == 0 and not closing:
        raise SamplingError(f"в сигнатуре нет замкнутых термов (операции: {[op.name for op in ops]})")

    def go(ctx: int, budget: int) -> Term:
        if ctx > 0 and (budget <= 0 or not ops or rng.random() < 1 / (budget + 1)):
            return Var(rng.randrange(ctx))
        choices = closing if budget <= 0 or ctx == 0 and budget <= 1 else ops
        op = rng.choice(choices)
        return Con(op, tuple(go(ctx + b, budget - 1) for b in op.arity))

    return go(n, depth)


def random_renaming(rng: random.Random, m: int, n: int) -> Renaming:
    if m > 0 and n == 0:
        raise SamplingError(f"нет переименований {m} → 0")
    return Renaming(tuple(rng.randrange(n) for _ in range(m)), n)


def random_subst(
    rng: random.Random,
    sig: Signature1,
    m: int,
    n: int,
    depth: int = 3,
) -> SubstMap[Term]:
    return SubstMap(tuple(random_term(rng, sig, n, depth) for _ in range(m)), n)


def random_prod(
    rng: random.Random,
    sig: Signature1,
    desc: tuple[int, ...],
    n: int,
    depth: int = _DEFAULT_DEPTH,
) -> ProdElem[Term]:
    """Кортеж из ``Σ^desc`` в контексте ``n``."""
    return ProdElem(
        tuple(desc), n, tuple(random_term(rng, sig, n + s, depth) for s in desc),
    )


# ──────────────────────────── Уменьшение ────────────────────────────

def shrink_term(t: Term, n: int) -> Iterator[Term]:
    """Кандидаты меньше ``t`` в том же контексте ``n``.

    Сначала ``Var(0)``, затем аргументы, из которых удаётся убрать
    связанные переменные, затем уменьшение внутри аргументов.
    """
    if isinstance(t, Var):
        if t.idx > 0:
            yield Var(0)
        return
    if n > 0:
        yield Var(0)
    for b, arg in zip(t.op.arity, t.args):
        lowered: Optional[Term] = arg
        for top in range(n + b - 1, n - 1, -1):
            if lowered is None:
                break
            lowered = strengthen(lowered, top)
        if lowered is not None:
            yield lowered
    for k, (b, arg) in enumerate(zip(t.op.arity, t.args)):
        for smaller in shrink_term(arg, n + b):
            yield Con(t.op, t.args[:k] + (smaller,) + t.args[k + 1:])


def shrink_sample(sample: Sample) -> Iterator[Sample]:
    """Образцы, отличающиеся от ``sample`` одним уменьшенным термом."""
    for key, part in sample.items():
        if isinstance(part, TermAt):
            for smaller in shrink_term(part.term, part.ctx):
                yield {**sample, key: TermAt(part.ctx, smaller)}
        elif isinstance(part, SubstMap):
            for k, image in enumerate(part.images):
                for smaller in shrink_term(image, part.target):
                    images = part.images[:k] + (smaller,) + part.images[k + 1:]
                    yield {**sample, key: SubstMap(images, part.target)}
        elif isinstance(part, ProdElem):
            for k, (ctx, value) in enumerate(zip(part.contexts(), part.values)):
                for smaller in shrink_term(value, ctx):
                    values = part.values[:k] + (smaller,) + part.values[k + 1:]
                    yield {**sample, key: ProdElem(part.desc, part.ctx, values)}


def _render(part: Part) -> str:
    if isinstance(part, TermAt):
        return f"{format_term(part.term, default_context(part.ctx))} @ {part.ctx}"
    if isinstance(part, SubstMap):
        names = default_context(part.target)
        images = "; ".join(format_term(x, names) for x in part.images)
        return f"[{images}] : {part.source} → {part.target}"
    if isinstance(part, Renaming):
        return f"{list(part.images)} : {part.source} → {part.target}"
    if isinstance(part, ProdElem):
        values = ", ".join(
            format_term(v, default_context(c)) for c, v in zip(part.contexts(), part.values)
        )
        return f"({values}) @ {part.ctx}"
    return str(part)


def describe_sample(sample: Sample) -> dict[str, str]:
    return {key: _render(part) for key, part in sample.items()}
