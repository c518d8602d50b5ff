"""Поверхностный синтаксис термов.

``(op arg ...)``; аргумент, связывающий ``k`` переменных, пишется
``(bind (x1 ... xk) term)``; константы — ``(c)`` или просто ``c``.
Свободные переменные именованы и разрешаются по объявленному контексту:
в ``"y,z"`` ``y`` получает индекс 0, ``z`` — индекс 1.

Пример: ``(app (abs (bind (x) x)) y)`` в контексте ``y``.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterator, Optional, Sequence

from synpy import sexpr
from synpy.exceptions import ParseError, ScopeError
from synpy.signature import Operation, Signature1
from synpy.terms import Con, Term, Var, scope_check

__all__ = ["parse_context", "default_context", "parse_term", "format_term"]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_'-]*\Z")
_BINDER_NAMES = ("x", "y", "z", "u", "w")
_RESERVED = {"bind"}


def parse_context(text: str) -> tuple[str, ...]:
    """``"y, z"`` → ``("y", "z")``; пустая строка — пустой контекст."""
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    for n in names:
        if not _NAME.match(n) or n in _RESERVED:
            raise ParseError(f"некорректное имя переменной {n!r}")
    if len(set(names)) != len(names):
        raise ParseError(f"повторное имя в контексте {text!r}")
    return names


def default_context(n: int) -> tuple[str, ...]:
    """Имена ``v0, v1, …`` для печати термов без объявленного контекста."""
    return tuple(f"v{i}" for i in range(n))


# ──────────────────────────── Разбор ────────────────────────────

def _lookup(scope: list[str], name: str) -> int | None:
    for i in range(len(scope) - 1, -1, -1):
        if scope[i] == name:
            return i
    return None


def _atom(sig: Signature1, name: str, scope: list[str]) -> Term:
    idx = _lookup(scope, name)
    if idx is not None:
        return Var(idx)
    op = sig.get(name)
    if op is not None and not op.arity:
        return Con(op, ())
    raise ParseError(f"неизвестная переменная {name!r}")


def _head(sig: Signature1, value: list[sexpr.SExpr]) -> Operation:
    if not value or not isinstance(value[0], str):
        raise ParseError(f"ожидалось (операция аргумент ...), получено {sexpr.dump(value)}")
    op = sig.get(value[0])
    if op is None:
        raise ParseError(f"неизвестная операция {value[0]!r}")
    if len(value) - 1 != len(op.arity):
        raise ParseError(
            f"{op.name} ожидает {len(op.arity)} аргументов, получено {len(value) - 1}"
        )
    return op


def _from_sexpr(sig: Signature1, value: sexpr.SExpr, scope: list[str]) -> Term:
    """Строит терм обходом с явным стеком, как :func:`synpy.models.init_fold`."""
    results: list[Term] = []
    # (выражение, видимые имена, операция, когда аргументы уже разобраны)
    stack: list[tuple[sexpr.SExpr, list[str], Optional[Operation]]] = [(value, scope, None)]
    while stack:
        cur, names, ready = stack.pop()
        if ready is not None:
            k = len(ready.arity)
            args = tuple(results[len(results) - k:])
            del results[len(results) - k:]
            results.append(Con(ready, args))
            continue
        if isinstance(cur, str):
            results.append(_atom(sig, cur, names))
            continue
        op = _head(sig, cur)
        children = []
        for b, raw in zip(op.arity, cur[1:]):
            bound, body = _binder(raw, b)
            for n in bound:
                if not _NAME.match(n) or n in _RESERVED:
                    raise ParseError(f"некорректное имя связанной переменной {n!r}")
            children.append((body, names + bound if bound else names, None))
        stack.append((cur, names, op))
        stack.extend(reversed(children))
    return results[0]


def _binder(raw: sexpr.SExpr, b: int) -> tuple[list[str], sexpr.SExpr]:
    is_bind = isinstance(raw, list) and len(raw) == 3 and raw[0] == "bind"
    if not is_bind:
        if b:
            raise ParseError(f"аргумент связывает {b} переменных: нужна форма (bind (...) term)")
        return [], raw
    assert isinstance(raw, list)
    names = raw[1]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ParseError(f"ожидался список имён, получено {sexpr.dump(names)}")
    if len(names) != b:
        raise ParseError(f"аргумент связывает {b} переменных, указано {len(names)}")
    return [n for n in names if isinstance(n, str)], raw[2]


def parse_term(sig: Signature1, text: str, context: Sequence[str] = ()) -> Term:
    """Разбирает терм в контексте ``context`` (имена свободных переменных)."""
    return _from_sexpr(sig, sexpr.read(text), list(context))


# ──────────────────────────── Печать ────────────────────────────

def _fresh_names(taken: set[str]) -> Iterator[str]:
    for suffix in itertools.chain([""], (str(i) for i in itertools.count(1))):
        for base in _BINDER_NAMES:
            name = base + suffix
            if name not in taken:
                yield name


def _to_sexpr(t: Term, scope: list[str], reserved: set[str]) -> sexpr.SExpr:
    results: list[sexpr.SExpr] = []
    # (терм, видимые имена, имена связанных по аргументам, когда они уже напечатаны)
    stack: list[tuple[Term, list[str], Optional[list[list[str]]]]] = [(t, scope, None)]
    while stack:
        cur, names, binders = stack.pop()
        if isinstance(cur, Var):
            results.append(names[cur.idx])
            continue
        if binders is not None:
            k = len(cur.args)
            args = results[len(results) - k:]
            del results[len(results) - k:]
            items: list[sexpr.SExpr] = [cur.op.name]
            for bound, arg in zip(binders, args):
                items.append(["bind", [*bound], arg] if bound else arg)
            results.append(items)
            continue
        binders = []
        children = []
        for b, arg in zip(cur.op.arity, cur.args):
            bound = list(itertools.islice(_fresh_names(set(names) | reserved), b)) if b else []
            binders.append(bound)
            children.append((arg, names + bound if bound else names, None))
        stack.append((cur, names, binders))
        stack.extend(reversed(children))
    return results[0]


def format_term(t: Term, context: Sequence[str]) -> str:
    """Печатает терм так, что :func:`parse_term` в том же контексте его восстанавливает.

    Связанные переменные получают имена, не совпадающие ни с одним видимым
    именем и ни с одной операцией.
    """
    if not scope_check(len(context), t):
        raise ScopeError(f"терм {t!r} не лежит в контексте {list(context)}")
    reserved = _ops_in(t) | _RESERVED
    return sexpr.dump(_to_sexpr(t, list(context), reserved))


def _ops_in(t: Term) -> set[str]:
    names: set[str] = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Con):
            names.add(cur.op.name)
            stack.extend(cur.args)
    return names
