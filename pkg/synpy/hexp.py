"""Полуравенства: комбинаторные выражения над алгебраическими модулями.

Алгебраический модуль задаётся дескриптором — кортежем натуральных чисел
``(n1, …, nm)``: произведение ``R^{n1} × … × R^{nm}``, где ``R^k`` — модуль,
продифференцированный ``k`` раз.  Каждое выражение типизируется парой
дескрипторов ``(dom, cod)``.

Синтаксис (s-выражения)::

    (comp A B)        сначала A, потом B
    (pair A B ...)    кортеж
    (proj j)          j-я компонента
    (ctor name)       операция сигнатуры
    subst             подстановка одной переменной, [1,0] → [0]
    weaken            [n] → [n+1]
    fresh             [] → [1], свежая переменная
    (bang)            в терминальный модуль []
    (deriv A)         A в расширенном контексте
    (id)              тождество
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple, Optional, Sequence, Union

from synpy import sexpr
from synpy.exceptions import ParseError, PatternError, ShapeError

if TYPE_CHECKING:
    from synpy.signature import Signature1

__all__ = [
    "Descriptor",
    "Id",
    "Comp",
    "Pair",
    "Proj",
    "Ctor",
    "Subst1",
    "Weaken",
    "Fresh",
    "Bang",
    "Deriv",
    "HExp",
    "Shape",
    "shape_check",
    "codomain",
    "check_pattern",
    "parse_hexp",
    "format_hexp",
]

Descriptor = tuple[int, ...]


# ──────────────────────────── Узлы ────────────────────────────

@dataclass(frozen=True)
class Id:
    desc: Optional[Descriptor] = None


@dataclass(frozen=True)
class Comp:
    first: HExp
    then: HExp


@dataclass(frozen=True)
class Pair:
    components: tuple[HExp, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class Proj:
    j: int


@dataclass(frozen=True)
class Ctor:
    op: str


@dataclass(frozen=True)
class Subst1:
    pass


@dataclass(frozen=True)
class Weaken:
    pass


@dataclass(frozen=True)
class Fresh:
    pass


@dataclass(frozen=True)
class Bang:
    desc: Optional[Descriptor] = None


@dataclass(frozen=True)
class Deriv:
    inner: HExp


HExp = Union[Id, Comp, Pair, Proj, Ctor, Subst1, Weaken, Fresh, Bang, Deriv]


class Shape(NamedTuple):
    dom: Descriptor
    cod: Descriptor


def _fmt(d: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in d) + "]"


def _arity(sig: Signature1, name: str, path: tuple[str, ...]) -> Descriptor:
    op = sig.get(name)
    if op is None:
        raise ShapeError(path, "операция сигнатуры", repr(name))
    return op.arity


# ──────────────────────────── Проверка форм ────────────────────────────

def _check(sig: Signature1, e: HExp, dom: Descriptor, path: tuple[str, ...]) -> Descriptor:
    if isinstance(e, Id):
        if e.desc is not None and e.desc != dom:
            raise ShapeError(path, _fmt(e.desc), _fmt(dom))
        return dom
    if isinstance(e, Comp):
        mid = _check(sig, e.first, dom, path + ("comp.first",))
        return _check(sig, e.then, mid, path + ("comp.then",))
    if isinstance(e, Pair):
        cod: Descriptor = ()
        for k, c in enumerate(e.components):
            cod += _check(sig, c, dom, path + (f"pair.{k}",))
        return cod
    if isinstance(e, Proj):
        if not 0 <= e.j < len(dom):
            raise ShapeError(path, f"индекс меньше {len(dom)}", e.j)
        return (dom[e.j],)
    if isinstance(e, Ctor):
        arity = _arity(sig, e.op, path)
        if dom != arity:
            raise ShapeError(path, _fmt(arity), _fmt(dom))
        return (0,)
    if isinstance(e, Subst1):
        if dom != (1, 0):
            raise ShapeError(path, "[1,0]", _fmt(dom))
        return (0,)
    if isinstance(e, Weaken):
        if len(dom) != 1:
            raise ShapeError(path, "[n]", _fmt(dom))
        return (dom[0] + 1,)
    if isinstance(e, Fresh):
        if dom != ():
            raise ShapeError(path, "[]", _fmt(dom))
        return (1,)
    if isinstance(e, Bang):
        if e.desc is not None and e.desc != dom:
            raise ShapeError(path, _fmt(e.desc), _fmt(dom))
        return ()
    if isinstance(e, Deriv):
        if any(s < 1 for s in dom):
            raise ShapeError(path, "все слоты ≥ 1", _fmt(dom))
        inner = _check(sig, e.inner, tuple(s - 1 for s in dom), path + ("deriv",))
        return tuple(s + 1 for s in inner)
    raise TypeError(f"не полуравенство: {e!r}")


# ── вывод домена, когда он не задан ──────────────────────────

@dataclass
class _Demand:
    """Частично известный дескриптор: известные слоты и длина."""
    slots: dict[int, int] = field(default_factory=dict)
    length: Optional[int] = None
    min_length: int = 0

    @classmethod
    def exact(cls, d: Descriptor) -> _Demand:
        return cls(dict(enumerate(d)), len(d), len(d))

    def part(self, offset: int, length: Optional[int]) -> _Demand:
        if length is None:
            return _Demand()
        slots = {
            k - offset: v for k, v in self.slots.items()
            if offset <= k < offset + length
        }
        return _Demand(slots, length, length)

    def merge(self, other: _Demand, path: tuple[str, ...]) -> _Demand:
        length = self.length
        if other.length is not None:
            if length is not None and length != other.length:
                raise ShapeError(path, f"длина {length}", f"длина {other.length}")
            length = other.length
        slots = dict(self.slots)
        for k, v in other.slots.items():
            if slots.get(k, v) != v:
                raise ShapeError(path + (f"slot.{k}",), slots[k], v)
            slots[k] = v
        min_length = max(self.min_length, other.min_length)
        if length is not None and min_length > length:
            raise ShapeError(path, f"длина {length}", f"не меньше {min_length}")
        return _Demand(slots, length, min_length)


def _cod_len(e: HExp) -> Optional[int]:
    if isinstance(e, (Proj, Ctor, Subst1, Weaken, Fresh)):
        return 1
    if isinstance(e, Bang):
        return 0
    if isinstance(e, Id):
        return None if e.desc is None else len(e.desc)
    if isinstance(e, Comp):
        return _cod_len(e.then)
    if isinstance(e, Pair):
        total = 0
        for c in e.components:
            n = _cod_len(c)
            if n is None:
                return None
            total += n
        return total
    if isinstance(e, Deriv):
        return _cod_len(e.inner)
    raise TypeError(f"не полуравенство: {e!r}")


def _demand(sig: Signature1, e: HExp, cod: _Demand, path: tuple[str, ...]) -> _Demand:
    if isinstance(e, Id):
        return cod if e.desc is None else cod.merge(_Demand.exact(e.desc), path)
    if isinstance(e, Comp):
        mid = _demand(sig, e.then, cod, path + ("comp.then",))
        return _demand(sig, e.first, mid, path + ("comp.first",))
    if isinstance(e, Pair):
        out = _Demand()
        offset: Optional[int] = 0
        for k, c in enumerate(e.components):
            n = _cod_len(c)
            part = cod.part(offset, n) if offset is not None else _Demand()
            out = out.merge(_demand(sig, c, part, path + (f"pair.{k}",)), path)
            offset = None if offset is None or n is None else offset + n
        return out
    if isinstance(e, Proj):
        slots = {e.j: cod.slots[0]} if 0 in cod.slots else {}
        return _Demand(slots, None, e.j + 1)
    if isinstance(e, Ctor):
        return _Demand.exact(_arity(sig, e.op, path))
    if isinstance(e, Subst1):
        return _Demand.exact((1, 0))
    if isinstance(e, Fresh):
        return _Demand.exact(())
    if isinstance(e, Weaken):
        if 0 in cod.slots:
            if cod.slots[0] < 1:
                raise ShapeError(path, "[n+1]", _fmt((cod.slots[0],)))
            return _Demand({0: cod.slots[0] - 1}, 1, 1)
        return _Demand({}, 1, 1)
    if isinstance(e, Bang):
        return _Demand() if e.desc is None else _Demand.exact(e.desc)
    if isinstance(e, Deriv):
        if any(v < 1 for v in cod.slots.values()):
            raise ShapeError(path, "все слоты ≥ 1", cod.slots)
        inner_cod = _Demand(
            {k: v - 1 for k, v in cod.slots.items()}, cod.length, cod.min_length,
        )
        inner = _demand(sig, e.inner, inner_cod, path + ("deriv",))
        if any(v < 0 for v in inner.slots.values()):
            raise ShapeError(path, "неотрицательные слоты", inner.slots)
        return _Demand(
            {k: v + 1 for k, v in inner.slots.items()}, inner.length, inner.min_length,
        )
    raise TypeError(f"не полуравенство: {e!r}")


def _infer_dom(sig: Signature1, e: HExp) -> Descriptor:
    demand = _demand(sig, e, _Demand(), ())
    length = demand.length if demand.length is not None else demand.min_length
    missing = [k for k in range(length) if k not in demand.slots]
    if missing:
        raise ShapeError((), "выводимый домен", f"слот {missing[0]} не определён")
    return tuple(demand.slots[k] for k in range(length))


def shape_check(
    sig: Signature1,
    e: HExp,
    ambient: Optional[Descriptor] = None,
) -> Shape:
    """Типизирует полуравенство: возвращает ``(dom, cod)``.

    С ``ambient`` домен задан извне (так типизируются стороны неравенств);
    без него домен выводится из конструкторов, подстановки и явных
    дескрипторов.  Итоговая проверка всегда идёт вперёд от домена.
    """
    dom = tuple(ambient) if ambient is not None else _infer_dom(sig, e)
    return Shape(dom, _check(sig, e, dom, ()))


def codomain(sig: Signature1, e: HExp, dom: Descriptor) -> Descriptor:
    return _check(sig, e, dom, ())


# ──────────────────────────── Дисциплина образцов ────────────────────────────

def _bound(
    sig: Signature1,
    e: HExp,
    dom: Descriptor,
    known: Sequence[bool],
    path: tuple[str, ...],
) -> list[int]:
    """Сколько раз каждый слот домена восстанавливается при сопоставлении."""
    if isinstance(e, Id):
        return [1 if k else 0 for k in known]
    if isinstance(e, Comp):
        mid = _check(sig, e.first, dom, path)
        counts = _bound(sig, e.then, mid, known, path + ("comp.then",))
        if any(c > 1 for c in counts):
            raise PatternError(f"{'/'.join(path) or '<корень>'}: нелинейный образец")
        return _bound(sig, e.first, dom, [c == 1 for c in counts], path + ("comp.first",))
    if isinstance(e, Pair):
        out = [0] * len(dom)
        offset = 0
        for k, c in enumerate(e.components):
            n = len(_check(sig, c, dom, path))
            part = _bound(sig, c, dom, known[offset:offset + n], path + (f"pair.{k}",))
            out = [a + b for a, b in zip(out, part)]
            offset += n
        return out
    if isinstance(e, Proj):
        out = [0] * len(dom)
        out[e.j] = 1 if known[0] else 0
        return out
    if isinstance(e, Ctor):
        return [1 if known[0] else 0] * len(dom)
    if isinstance(e, Weaken):
        return [1 if known[0] else 0]
    if isinstance(e, Fresh):
        return []
    if isinstance(e, Bang):
        return [0] * len(dom)
    if isinstance(e, Deriv):
        return _bound(sig, e.inner, tuple(s - 1 for s in dom), known, path + ("deriv",))
    raise PatternError(
        f"{'/'.join(path) or '<корень>'}: {type(e).__name__} недопустим в образце"
    )


def check_pattern(sig: Signature1, e: HExp, dom: Descriptor) -> None:
    """Проверяет дисциплину образцов; при нарушении — :class:`PatternError`.

    Образец строится из ``ctor``, ``pair``, ``comp``, ``proj``, ``weaken``,
    ``fresh``, ``deriv``, ``bang`` и ``id``; каждый слот домена должен
    восстанавливаться ровно одним ``proj``.
    """
    try:
        cod = _check(sig, e, dom, ())
    except ShapeError as exc:
        raise PatternError(str(exc)) from exc
    counts = _bound(sig, e, dom, [True] * len(cod), ())
    for j, c in enumerate(counts):
        if c == 0:
            raise PatternError(f"слот {j} домена не связан образцом")
        if c > 1:
            raise PatternError(f"слот {j} связан {c} раз: нелинейный образец")


# ──────────────────────────── Синтаксис ────────────────────────────

_ATOMS: dict[str, HExp] = {"subst": Subst1(), "weaken": Weaken(), "fresh": Fresh()}


def _nat(value: sexpr.SExpr) -> int:
    if isinstance(value, str) and value.isdigit():
        return int(value)
    raise ParseError(f"ожидалось натуральное число, получено {sexpr.dump(value)}")


def _from_sexpr(value: sexpr.SExpr) -> HExp:
    if isinstance(value, str):
        if value in _ATOMS:
            return _ATOMS[value]
        raise ParseError(f"неизвестный атом полуравенства {value!r}")
    if not value or not isinstance(value[0], str):
        raise ParseError(f"ожидалась форма (голова ...), получено {sexpr.dump(value)}")
    head, args = value[0], value[1:]
    if head in _ATOMS and not args:
        return _ATOMS[head]
    if head == "comp":
        if len(args) < 2:
            raise ParseError("comp ожидает не меньше двух аргументов")
        out = _from_sexpr(args[0])
        for a in args[1:]:
            out = Comp(out, _from_sexpr(a))
        return out
    if head == "pair":
        return Pair(tuple(_from_sexpr(a) for a in args))
    if head == "proj":
        if len(args) != 1:
            raise ParseError("proj ожидает один индекс")
        return Proj(_nat(args[0]))
    if head == "ctor":
        if len(args) != 1 or not isinstance(args[0], str):
            raise ParseError("ctor ожидает имя операции")
        return Ctor(args[0])
    if head in ("id", "bang"):
        desc = tuple(_nat(a) for a in args) if args else None
        return Id(desc) if head == "id" else Bang(desc)
    if head == "deriv":
        if len(args) != 1:
            raise ParseError("deriv ожидает одно выражение")
        return Deriv(_from_sexpr(args[0]))
    raise ParseError(f"неизвестная форма {head!r}")


def parse_hexp(text: str) -> HExp:
    return _from_sexpr(sexpr.read(text))


def _to_sexpr(e: HExp) -> sexpr.SExpr:
    if isinstance(e, Subst1):
        return "subst"
    if isinstance(e, Weaken):
        return "weaken"
    if isinstance(e, Fresh):
        return "fresh"
    if isinstance(e, Comp):
        return ["comp", _to_sexpr(e.first), _to_sexpr(e.then)]
    if isinstance(e, Pair):
        return ["pair", *(_to_sexpr(c) for c in e.components)]
    if isinstance(e, Proj):
        return ["proj", str(e.j)]
    if isinstance(e, Ctor):
        return ["ctor", e.op]
    if isinstance(e, (Id, Bang)):
        head = "id" if isinstance(e, Id) else "bang"
        return [head, *(str(s) for s in e.desc or ())]
    if isinstance(e, Deriv):
        return ["deriv", _to_sexpr(e.inner)]
    raise TypeError(f"не полуравенство: {e!r}")


def format_hexp(e: HExp) -> str:
    return sexpr.dump(_to_sexpr(e))
