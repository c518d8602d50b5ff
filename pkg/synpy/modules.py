"""Алгебраические модули: произведения производных тавтологических модулей.

Элемент модуля ``R^s`` с дескриптором ``s = (n1, …, nm)`` в контексте ``n`` —
кортеж значений, где k-е значение лежит в носителе модели в контексте
``n + nk``.  Обратный образ модуля вдоль морфизма моделей данных не меняет,
поэтому отдельного типа для него нет.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Generic, Optional, TypeVar

from synpy.exceptions import ShapeError
from synpy.terms import Renaming, SubstMap

if TYPE_CHECKING:
    from synpy.models import Model

__all__ = [
    "ProdElem",
    "shift_map",
    "prod_subst",
    "prod_compare",
    "prod_leq",
    "prod_eq",
    "prod_map",
]

C = TypeVar("C")
D = TypeVar("D")


@dataclass(frozen=True)
class ProdElem(Generic[C]):
    desc: tuple[int, ...]
    ctx: int
    values: tuple[C, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.desc):
            raise ShapeError(("values",), f"{len(self.desc)} значений", len(self.values))

    def contexts(self) -> tuple[int, ...]:
        """Контекст каждой компоненты: ``ctx + nk``."""
        return tuple(self.ctx + s for s in self.desc)

    @classmethod
    def single(cls, ctx: int, value: C, depth: int = 0) -> ProdElem[C]:
        return cls((depth,), ctx, (value,))


def _same_shape(desc: tuple[int, ...], a: ProdElem[C], b: ProdElem[C]) -> None:
    if a.desc != desc or b.desc != desc:
        raise ShapeError(("desc",), list(desc), [list(a.desc), list(b.desc)])
    if a.ctx != b.ctx:
        raise ShapeError(("ctx",), a.ctx, b.ctx)


def shift_map(model: Model[C], f: SubstMap[C], k: int) -> SubstMap[C]:
    """Сдвиг подстановки в произвольной модели: ``m+k → n+k``.

    Старые образы переименовываются вдоль включения, новые переменные
    переходят в ``η`` свежих переменных.
    """
    if k == 0:
        return f
    n = f.target
    inclusion = Renaming.inclusion(n, k)
    images = tuple(model.rename(inclusion, x) for x in f.images)
    fresh = tuple(model.eta(n + k, n + j) for j in range(k))
    return SubstMap(images + fresh, n + k)


def prod_subst(
    model: Model[C],
    desc: tuple[int, ...],
    f: SubstMap[C],
    e: ProdElem[C],
) -> ProdElem[C]:
    """Действие подстановки на элемент ``R^desc``: k-я компонента — ``kleisli(shift(f, nk))``."""
    if e.desc != tuple(desc):
        raise ShapeError(("desc",), list(desc), list(e.desc))
    if f.source != e.ctx:
        raise ShapeError(("ctx",), e.ctx, f.source)
    values = tuple(
        model.kleisli(shift_map(model, f, s), v) for s, v in zip(e.desc, e.values)
    )
    return ProdElem(e.desc, f.target, values)


def prod_compare(
    model: Model[C],
    desc: tuple[int, ...],
    a: ProdElem[C],
    b: ProdElem[C],
) -> Optional[bool]:
    """Покомпонентный порядок: ``False`` доминирует ``None`` (неизвестно), тот — ``True``."""
    _same_shape(tuple(desc), a, b)
    unknown = False
    for ctx, x, y in zip(a.contexts(), a.values, b.values):
        answer = model.leq(ctx, x, y)
        if answer is False:
            return False
        if answer is None:
            unknown = True
    return None if unknown else True


def prod_leq(
    model: Model[C],
    desc: tuple[int, ...],
    a: ProdElem[C],
    b: ProdElem[C],
) -> bool:
    """``True``, если порядок модели выполняется во всех компонентах; пустой кортеж — ``True``."""
    return prod_compare(model, desc, a, b) is True


def prod_eq(model: Model[C], a: ProdElem[C], b: ProdElem[C]) -> bool:
    if a.desc != b.desc or a.ctx != b.ctx:
        return False
    return all(
        model.eq(ctx, x, y) for ctx, x, y in zip(a.contexts(), a.values, b.values)
    )


def prod_map(fn: Callable[[int, C], D], e: ProdElem[C]) -> ProdElem[D]:
    """Покомпонентное применение ``fn(контекст, значение)``."""
    return ProdElem(
        e.desc, e.ctx, tuple(fn(ctx, v) for ctx, v in zip(e.contexts(), e.values)),
    )
