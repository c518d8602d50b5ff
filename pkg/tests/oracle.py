"""Эталонные реализации для лямбда-исчисления, написанные без ядра synpy.

* именованная подстановка с переименованием связанных переменных;
* нормализатор в нормальном порядке на классических индексах де Брёйна
  (0 — ближайшая абстракция).

Из synpy берутся только конструкторы ``Var``/``Con``.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence, Union

from lam import ABS, APP
from synpy.terms import Con, Term, Var

# ═══════════════════════════════════════════════════════════
#  Именованные термы
# ═══════════════════════════════════════════════════════════

# ("v", x) | ("lam", x, body) | ("app", f, a)
Named = tuple

_fresh_counter = itertools.count()


def to_named(t: Term, names: Sequence[str]) -> Named:
    scope = list(names)

    def go(cur: Term) -> Named:
        if isinstance(cur, Var):
            return ("v", scope[cur.idx])
        if cur.op.name == "app":
            return ("app", go(cur.args[0]), go(cur.args[1]))
        x = f"b{next(_fresh_counter)}"
        scope.append(x)
        body = go(cur.args[0])
        scope.pop()
        return ("lam", x, body)

    return go(t)


def from_named(m: Named, names: Sequence[str]) -> Term:
    def go(cur: Named, scope: list[str]) -> Term:
        if cur[0] == "v":
            for i in range(len(scope) - 1, -1, -1):
                if scope[i] == cur[1]:
                    return Var(i)
            raise KeyError(cur[1])
        if cur[0] == "app":
            return Con(APP, (go(cur[1], scope), go(cur[2], scope)))
        return Con(ABS, (go(cur[2], scope + [cur[1]]),))

    return go(m, list(names))


def free_vars(m: Named) -> set[str]:
    if m[0] == "v":
        return {m[1]}
    if m[0] == "app":
        return free_vars(m[1]) | free_vars(m[2])
    return free_vars(m[2]) - {m[1]}


def named_subst(m: Named, images: dict[str, Named]) -> Named:
    """Одновременная подстановка с переименованием при захвате."""
    if m[0] == "v":
        return images.get(m[1], m)
    if m[0] == "app":
        return ("app", named_subst(m[1], images), named_subst(m[2], images))
    x, body = m[1], m[2]
    inner = {k: v for k, v in images.items() if k != x}
    danger = set().union(*(free_vars(v) for v in inner.values())) if inner else set()
    if x in danger:
        y = f"r{next(_fresh_counter)}"
        inner[x] = ("v", y)
        x = y
    return ("lam", x, named_subst(body, inner))


def reference_subst(t: Term, images: Sequence[Term], target: int) -> Term:
    """Параллельная подстановка через именованные термы."""
    src = [f"s{i}" for i in range(len(images))]
    dst = [f"t{i}" for i in range(target)]
    mapping = {s: to_named(img, dst) for s, img in zip(src, images)}
    return from_named(named_subst(to_named(t, src), mapping), dst)


# ═══════════════════════════════════════════════════════════
#  Классические индексы де Брёйна
# ═══════════════════════════════════════════════════════════

# ("var", k) | ("lam", body) | ("app", f, a)
Classic = tuple


def to_classic(t: Term, n: int) -> Classic:
    def go(cur: Term, ctx: int) -> Classic:
        if isinstance(cur, Var):
            return ("var", ctx - 1 - cur.idx)
        if cur.op.name == "app":
            return ("app", go(cur.args[0], ctx), go(cur.args[1], ctx))
        return ("lam", go(cur.args[0], ctx + 1))

    return go(t, n)


def from_classic(d: Classic, n: int) -> Term:
    def go(cur: Classic, ctx: int) -> Term:
        if cur[0] == "var":
            return Var(ctx - 1 - cur[1])
        if cur[0] == "app":
            return Con(APP, (go(cur[1], ctx), go(cur[2], ctx)))
        return Con(ABS, (go(cur[1], ctx + 1),))

    return go(d, n)


def _shift(d: Classic, by: int, cutoff: int = 0) -> Classic:
    if d[0] == "var":
        return ("var", d[1] + by) if d[1] >= cutoff else d
    if d[0] == "app":
        return ("app", _shift(d[1], by, cutoff), _shift(d[2], by, cutoff))
    return ("lam", _shift(d[1], by, cutoff + 1))


def _subst(d: Classic, j: int, s: Classic) -> Classic:
    if d[0] == "var":
        return s if d[1] == j else d
    if d[0] == "app":
        return ("app", _subst(d[1], j, s), _subst(d[2], j, s))
    return ("lam", _subst(d[1], j + 1, _shift(s, 1)))


def _beta(body: Classic, arg: Classic) -> Classic:
    return _shift(_subst(body, 0, _shift(arg, 1)), -1)


def _normal_step(d: Classic) -> Optional[Classic]:
    if d[0] == "var":
        return None
    if d[0] == "lam":
        inner = _normal_step(d[1])
        return None if inner is None else ("lam", inner)
    f, a = d[1], d[2]
    if f[0] == "lam":
        return _beta(f[1], a)
    left = _normal_step(f)
    if left is not None:
        return ("app", left, a)
    right = _normal_step(a)
    return None if right is None else ("app", f, right)


def normal_order(t: Term, n: int, limit: int = 1000) -> Union[Term, None]:
    """Нормальная форма в нормальном порядке или ``None``, если не нашлась за ``limit`` шагов."""
    d = to_classic(t, n)
    for _ in range(limit):
        nxt = _normal_step(d)
        if nxt is None:
            return from_classic(d, n)
        d = nxt
    return None
