"""Ядро термов начального представления.

Контекст — натуральное число ``n``; переменные — индексы ``0..n-1``.
Свежая переменная расширенного контекста — *верхний* индекс ``n``, поэтому
старые переменные при расширении сохраняют свои индексы, а связанные
переменные всегда лежат выше свободных (уровни де Брёйна).

Все функции чистые: термы неизменяемы, совпадающие поддеревья могут
разделяться, но это не наблюдаемо.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Generic, Iterator, Optional, TypeVar, Union

from synpy.exceptions import ScopeError
from synpy.signature import Operation

__all__ = [
    "Var",
    "Con",
    "Term",
    "Renaming",
    "SubstMap",
    "CHECKED",
    "scope_check",
    "rename",
    "weaken_term",
    "strengthen",
    "shift",
    "subst",
    "subst1",
    "unit",
    "occurrences",
    "subterms",
]

# Проверяемый режим: каждая операция ядра сверяет области видимости.
CHECKED = os.environ.get("SYN_CHECKED", "") == "1"

C = TypeVar("C")


@dataclass(frozen=True, slots=True)
class Var:
    idx: int

    def __repr__(self) -> str:
        return f"Var({self.idx})"


@dataclass(frozen=True, slots=True)
class Con:
    op: Operation
    args: tuple[Term, ...]

    def __repr__(self) -> str:
        inner = ", ".join(repr(a) for a in self.args)
        return f"Con({self.op.name}, [{inner}])"


Term = Union[Var, Con]


# ──────────────────────────── Отображения ────────────────────────────

@dataclass(frozen=True)
class Renaming:
    """Переименование ``m → n``: ``images[i] < target`` для всех ``i < m``."""
    images: tuple[int, ...]
    target: int

    @property
    def source(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> Renaming:
        return cls(tuple(range(n)), n)

    @classmethod
    def inclusion(cls, n: int, k: int = 1) -> Renaming:
        """Включение ``n → n+k``: индексы не меняются."""
        return cls(tuple(range(n)), n + k)

    def is_valid(self) -> bool:
        return self.target >= 0 and all(0 <= i < self.target for i in self.images)


@dataclass(frozen=True)
class SubstMap(Generic[C]):
    """Подстановка ``m → n``: ``images[i]`` — значение в контексте ``target``.

    Для синтаксической модели значения — термы; для прочих моделей — элементы
    их носителя.  Монотонности не требуется.
    """
    images: tuple[C, ...]
    target: int

    @property
    def source(self) -> int:
        return len(self.images)


def unit(n: int) -> SubstMap[Term]:
    """Единица монады: ``[Var 0, …, Var n-1]``."""
    return SubstMap(tuple(Var(i) for i in range(n)), n)


# ──────────────────────────── Области видимости ────────────────────────────

def scope_check(n: int, t: Term) -> bool:
    """``True``, если ``t`` корректен в контексте ``n``."""
    if n < 0:
        return False
    stack: list[tuple[int, Term]] = [(n, t)]
    while stack:
        ctx, cur = stack.pop()
        if isinstance(cur, Var):
            if not 0 <= cur.idx < ctx:
                return False
            continue
        arity = cur.op.arity
        if len(cur.args) != len(arity):
            return False
        stack.extend((ctx + b, a) for b, a in zip(arity, cur.args))
    return True


def _checked(check: Optional[bool]) -> bool:
    return CHECKED if check is None else check


def _require(n: int, t: Term, what: str) -> None:
    if not scope_check(n, t):
        raise ScopeError(f"{what}: терм {t!r} не лежит в контексте {n}")


# ──────────────────────────── Перестройка ────────────────────────────

def _rebuild(t: Term, leaf: Callable[[Var, int], Term]) -> Term:
    """Перестраивает ``t`` снизу вверх, заменяя каждую переменную на ``leaf(v, depth)``.

    ``depth`` — сколько переменных связано над вхождением.  Обход с явным
    стеком: глубина терма не ограничена глубиной рекурсии.
    """
    results: list[Term] = []
    stack: list[tuple[Term, int, bool]] = [(t, 0, False)]
    while stack:
        cur, depth, ready = stack.pop()
        if isinstance(cur, Var):
            results.append(leaf(cur, depth))
            continue
        if ready:
            k = len(cur.args)
            args = tuple(results[len(results) - k:])
            del results[len(results) - k:]
            results.append(Con(cur.op, args))
            continue
        stack.append((cur, depth, True))
        for b, arg in reversed(list(zip(cur.op.arity, cur.args))):
            stack.append((arg, depth + b, False))
    return results[0]


# ──────────────────────────── Переименование ────────────────────────────

def rename(f: Renaming, t: Term, *, check: Optional[bool] = None) -> Term:
    """Переименование вдоль ``f : m → n``.

    Под связывателем свежие индексы ``m+j`` переходят в ``n+j``: с уровнями
    глубина связывания на сдвиг не влияет.
    """
    m, n = f.source, f.target
    if _checked(check):
        if not f.is_valid():
            raise ScopeError(f"некорректное переименование {f!r}")
        _require(m, t, "rename")
    images = f.images

    def leaf(v: Var, depth: int) -> Term:
        return Var(images[v.idx]) if v.idx < m else Var(v.idx - m + n)

    return _rebuild(t, leaf)


def weaken_term(t: Term, n: int, k: int = 1) -> Term:
    """Ослабление ``n → n+k`` вдоль включения: старые индексы сохраняются."""
    if k == 0:
        return t
    return _rebuild(t, lambda v, depth: v if v.idx < n else Var(v.idx + k))


class _Occurs(Exception):
    pass


def strengthen(t: Term, n: int) -> Optional[Term]:
    """Обратное к ``weaken_term(·, n, 1)``: ``t`` из ``n+1`` в ``n``.

    ``None``, если верхняя переменная ``n`` встречается в ``t``.
    """

    def leaf(v: Var, depth: int) -> Term:
        if v.idx < n:
            return v
        if v.idx == n:
            raise _Occurs
        return Var(v.idx - 1)

    try:
        return _rebuild(t, leaf)
    except _Occurs:
        return None


# ──────────────────────────── Подстановка ────────────────────────────

def shift(f: SubstMap[Term], k: int = 1) -> SubstMap[Term]:
    """Сдвинутая подстановка ``m+k → n+k``.

    Старые образы ослабляются вдоль включения, новые индексы ``m+j``
    переходят в ``Var(n+j)``.
    """
    if k == 0:
        return f
    n = f.target
    images = tuple(weaken_term(x, n, k) for x in f.images)
    fresh = tuple(Var(n + j) for j in range(k))
    return SubstMap(images + fresh, n + k)


def subst(f: SubstMap[Term], t: Term, *, check: Optional[bool] = None) -> Term:
    """Параллельная подстановка ``f : m → n`` в терм над ``m``."""
    m, n = f.source, f.target
    if _checked(check):
        for x in f.images:
            _require(n, x, "subst (образ)")
        _require(m, t, "subst")
    # образы, ослабленные на глубину связывания
    shifted: dict[int, tuple[Term, ...]] = {0: f.images}

    def leaf(v: Var, depth: int) -> Term:
        if v.idx >= m:
            return Var(v.idx - m + n)
        if depth not in shifted:
            shifted[depth] = tuple(weaken_term(x, n, depth) for x in f.images)
        return shifted[depth][v.idx]

    return _rebuild(t, leaf)


def subst1(body: Term, arg: Term, n: int, *, check: Optional[bool] = None) -> Term:
    """Подстановка одной переменной: ``body[* := arg]``.

    ``body`` лежит в ``n+1``, ``arg`` — в ``n``.  Реализовано отдельно от
    :func:`subst`: старые переменные остаются на месте, ``*`` уходит в ``arg``.
    """
    if _checked(check):
        _require(n + 1, body, "subst1 (тело)")
        _require(n, arg, "subst1 (аргумент)")

    def leaf(v: Var, depth: int) -> Term:
        if v.idx < n:
            return v
        if v.idx == n:
            return weaken_term(arg, n, depth)
        return Var(v.idx - 1)

    return _rebuild(body, leaf)


# ──────────────────────────── Обход ────────────────────────────

def subterms(t: Term) -> Iterator[Term]:
    """Все подтермы в прямом порядке, включая сам ``t``."""
    stack = [t]
    while stack:
        cur = stack.pop()
        yield cur
        if isinstance(cur, Con):
            stack.extend(reversed(cur.args))


def occurrences(t: Term, i: int) -> int:
    """Сколько раз свободная переменная ``i`` встречается в ``t``."""
    return sum(1 for s in subterms(t) if isinstance(s, Var) and s.idx == i)
