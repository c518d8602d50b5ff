"""1- и 2-сигнатуры: таблица операций и ориентированные неравенства.

Формат файла сигнатуры (JSON, UTF-8)::

    { "name": "lambda-beta",
      "ops": [ {"name": "app", "arity": [0, 0]}, {"name": "abs", "arity": [1]} ],
      "inequations": [
        { "name": "beta", "dom": [1, 0], "pattern_side": "lhs",
          "lhs": "(comp (pair (comp (proj 0) (ctor abs)) (proj 1)) (ctor app))",
          "rhs": "subst" } ] }

Загрузка тотальна: либо сигнатура целиком корректна, либо исключение.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterator, Optional, Union

from synpy.exceptions import ParseError, PatternError, ShapeError, ValidationError
from synpy.hexp import (
    HExp,
    check_pattern,
    codomain,
    format_hexp,
    parse_hexp,
    shape_check,
)

__all__ = [
    "Operation",
    "Signature1",
    "Inequation",
    "Signature2",
    "BUNDLED",
    "parse_signature_file",
    "dump_signature",
    "load_signature",
]

log = logging.getLogger(__name__)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")

# сигнатуры, поставляемые вместе с пакетом (synpy/data/)
BUNDLED = (
    "lambda-beta.sig.json",
    "lambda-eta.sig.json",
    "lambda-beta-eta.sig.json",
)


def _identifier(value: Any, where: str) -> str:
    if not isinstance(value, str) or not _IDENT.match(value):
        raise ValidationError(where, f"некорректный идентификатор {value!r}")
    return value


def _descriptor(value: Any, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in value
    ):
        raise ValidationError(where, f"ожидался список натуральных чисел, получено {value!r}")
    return tuple(value)


# ──────────────────────────── 1-сигнатура ────────────────────────────

@dataclass(frozen=True)
class Operation:
    """Операция: имя и арность (k-й элемент — сколько переменных связывает k-й аргумент)."""
    name: str
    arity: tuple[int, ...]

    @classmethod
    def from_raw(cls, data: Any, where: str = "ops") -> Operation:
        if not isinstance(data, dict):
            raise ValidationError(where, "ожидался объект {name, arity}")
        return cls(
            name=_identifier(data.get("name"), f"{where}.name"),
            arity=_descriptor(data.get("arity"), f"{where}.arity"),
        )

    def to_raw(self) -> dict[str, Any]:
        return {"name": self.name, "arity": list(self.arity)}


@dataclass(frozen=True)
class Signature1:
    ops: tuple[Operation, ...]
    _by_name: dict[str, Operation] = field(
        init=False, repr=False, compare=False, hash=False,
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_name", {op.name: op for op in self.ops})

    def __iter__(self) -> Iterator[Operation]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def get(self, name: str) -> Optional[Operation]:
        return self._by_name.get(name)

    def op(self, name: str) -> Operation:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"в сигнатуре нет операции {name!r}") from None

    def index(self, name: str) -> int:
        return self.ops.index(self.op(name))


# ──────────────────────────── Неравенства ────────────────────────────

@dataclass(frozen=True)
class Inequation:
    """Ориентированная пара параллельных полуравенств ``lhs ≤ rhs``.

    ``pattern_side`` — сторона, по которой ищутся редексы; другая сторона
    даёт результат свёртки.
    """
    name: str
    dom: tuple[int, ...]
    lhs: HExp
    rhs: HExp
    pattern_side: str = "lhs"

    @property
    def pattern(self) -> HExp:
        return self.lhs if self.pattern_side == "lhs" else self.rhs

    @property
    def contractum(self) -> HExp:
        return self.rhs if self.pattern_side == "lhs" else self.lhs

    def cod(self, sig: Signature1) -> tuple[int, ...]:
        return codomain(sig, self.lhs, self.dom)

    @classmethod
    def from_raw(cls, data: Any, sig: Signature1, where: str) -> Inequation:
        """Разбирает и проверяет неравенство против ``sig``."""
        if not isinstance(data, dict):
            raise ValidationError(where, "ожидался объект неравенства")
        name = _identifier(data.get("name"), f"{where}.name")
        dom = _descriptor(data.get("dom"), f"{where}.dom")
        side = data.get("pattern_side", "lhs")
        if side not in ("lhs", "rhs"):
            raise ValidationError(f"{where}.pattern_side", f"ожидалось lhs или rhs, получено {side!r}")

        sides: dict[str, HExp] = {}
        cods: dict[str, tuple[int, ...]] = {}
        for key in ("lhs", "rhs"):
            text = data.get(key)
            if not isinstance(text, str):
                raise ValidationError(f"{where}.{key}", "ожидалась строка с s-выражением")
            try:
                sides[key] = parse_hexp(text)
            except ParseError as exc:
                raise ValidationError(f"{where}.{key}", str(exc)) from exc
            try:
                cods[key] = shape_check(sig, sides[key], dom).cod
            except ShapeError as exc:
                raise ValidationError(f"{where}.{key}", str(exc)) from exc

        if cods["lhs"] != cods["rhs"]:
            raise ValidationError(
                where, f"кодомены сторон различаются: {list(cods['lhs'])} и {list(cods['rhs'])}",
            )
        if len(cods["lhs"]) != 1:
            raise ValidationError(
                where, f"кодомен должен состоять из одного слота, получено {list(cods['lhs'])}",
            )
        try:
            check_pattern(sig, sides[side], dom)
        except PatternError as exc:
            raise ValidationError(f"{where}.{side}", str(exc)) from exc
        return cls(name=name, dom=dom, lhs=sides["lhs"], rhs=sides["rhs"], pattern_side=side)

    def to_raw(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dom": list(self.dom),
            "pattern_side": self.pattern_side,
            "lhs": format_hexp(self.lhs),
            "rhs": format_hexp(self.rhs),
        }


# ──────────────────────────── 2-сигнатура ────────────────────────────

@dataclass(frozen=True)
class Signature2:
    name: str
    sig: Signature1
    ineqs: tuple[Inequation, ...] = ()

    def ineq(self, name: str) -> Inequation:
        for i in self.ineqs:
            if i.name == name:
                return i
        raise KeyError(f"в сигнатуре {self.name!r} нет неравенства {name!r}")

    @classmethod
    def from_raw(cls, data: Any) -> Signature2:
        if not isinstance(data, dict):
            raise ValidationError("<корень>", "ожидался JSON-объект")
        name = _identifier(data.get("name"), "name")
        raw_ops = data.get("ops")
        if not isinstance(raw_ops, list):
            raise ValidationError("ops", "ожидался список операций")
        ops = tuple(Operation.from_raw(o, f"ops[{k}]") for k, o in enumerate(raw_ops))
        seen: set[str] = set()
        for k, op in enumerate(ops):
            if op.name in seen:
                raise ValidationError(f"ops[{k}].name", f"повторное имя операции {op.name!r}")
            seen.add(op.name)
        sig = Signature1(ops)

        raw_ineqs = data.get("inequations", [])
        if not isinstance(raw_ineqs, list):
            raise ValidationError("inequations", "ожидался список неравенств")
        ineqs = tuple(
            Inequation.from_raw(i, sig, f"inequations[{k}]")
            for k, i in enumerate(raw_ineqs)
        )
        names: set[str] = set()
        for k, i in enumerate(ineqs):
            if i.name in names:
                raise ValidationError(f"inequations[{k}].name", f"повторное имя неравенства {i.name!r}")
            names.add(i.name)
        log.debug("Сигнатура %s: %d операций, %d неравенств", name, len(ops), len(ineqs))
        return cls(name=name, sig=sig, ineqs=ineqs)

    def to_raw(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ops": [op.to_raw() for op in self.sig],
            "inequations": [i.to_raw() for i in self.ineqs],
        }


# ──────────────────────────── Файлы ────────────────────────────

def parse_signature_file(text: Union[bytes, str]) -> Signature2:
    """Разбирает JSON-файл сигнатуры.

    :raises ParseError: текст не UTF-8 или не JSON (со строкой и столбцом).
    :raises ValidationError: нарушен инвариант сигнатуры.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"файл не в UTF-8: {exc.reason}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return Signature2.from_raw(data)


def dump_signature(sig2: Signature2) -> str:
    """Каноническая сериализация; ``parse_signature_file`` её обращает."""
    return json.dumps(sig2.to_raw(), ensure_ascii=False, indent=2) + "\n"


def load_signature(ref: Union[str, Path]) -> Signature2:
    """Загружает сигнатуру из файла или по имени из поставки пакета."""
    path = Path(ref)
    if path.is_file():
        return parse_signature_file(path.read_bytes())
    if str(ref) in BUNDLED:
        data = (resources.files("synpy") / "data" / str(ref)).read_bytes()
        return parse_signature_file(data)
    raise FileNotFoundError(f"нет файла сигнатуры {str(ref)!r}")

