"""Чтение и печать s-выражений.

Общий синтаксис для полуравенств (``(comp (proj 0) (ctor abs))``) и термов
(``(app (abs (bind (x) x)) y)``).  Атомы остаются строками — числа и имена
разбирают потребители.
"""

from __future__ import annotations

from typing import Union

from synpy.exceptions import ParseError

__all__ = ["SExpr", "read", "dump"]

SExpr = Union[str, list["SExpr"]]

_DELIMITERS = "()"


class _Reader:
    def __init__(self, text: str):
        self._text = text
        self._pos = 0

    # ── позиция для сообщений об ошибках ─────────────────────

    def _where(self, pos: int) -> tuple[int, int]:
        line = self._text.count("\n", 0, pos) + 1
        col = pos - (self._text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def _error(self, message: str, pos: int | None = None) -> ParseError:
        line, col = self._where(self._pos if pos is None else pos)
        return ParseError(message, line, col)

    # ── лексика ──────────────────────────────────────────────

    def skip_whitespace(self) -> None:
        s = self._text
        while self._pos < len(s):
            ch = s[self._pos]
            if ch == ";":
                while self._pos < len(s) and s[self._pos] != "\n":
                    self._pos += 1
            elif ch.isspace():
                self._pos += 1
            else:
                return

    def at_end(self) -> bool:
        self.skip_whitespace()
        return self._pos >= len(self._text)

    def _read_token(self) -> str:
        s = self._text
        start = self._pos
        while (
            self._pos < len(s)
            and not s[self._pos].isspace()
            and s[self._pos] not in _DELIMITERS
            and s[self._pos] != ";"
        ):
            self._pos += 1
        return s[start:self._pos]

    # ── синтаксис ────────────────────────────────────────────

    def read(self) -> SExpr:
        """Одно выражение; вложенность ведётся явным стеком открытых списков."""
        # (позиция открывающей скобки, накопленные элементы)
        open_lists: list[tuple[int, list[SExpr]]] = []
        while True:
            self.skip_whitespace()
            if self._pos >= len(self._text):
                if open_lists:
                    raise self._error("список не закрыт", open_lists[-1][0])
                raise self._error("неожиданный конец ввода")
            ch = self._text[self._pos]
            value: SExpr
            if ch == "(":
                open_lists.append((self._pos, []))
                self._pos += 1
                continue
            if ch == ")":
                if not open_lists:
                    raise self._error("лишняя закрывающая скобка")
                self._pos += 1
                value = open_lists.pop()[1]
            else:
                value = self._read_token()
            if not open_lists:
                return value
            open_lists[-1][1].append(value)


def read(text: str) -> SExpr:
    """Читает ровно одно s-выражение; хвост, кроме пробелов, — ошибка."""
    reader = _Reader(text)
    value = reader.read()
    if not reader.at_end():
        raise reader._error("лишний текст после выражения")
    return value


def dump(value: SExpr) -> str:
    """Каноническая печать: один пробел между элементами, без переносов."""
    tokens: list[str] = []
    # None отмечает закрывающую скобку
    stack: list[SExpr | None] = [value]
    while stack:
        cur = stack.pop()
        if cur is None:
            tokens.append(")")
        elif isinstance(cur, str):
            tokens.append(cur)
        else:
            tokens.append("(")
            stack.append(None)
            stack.extend(reversed(cur))
    out: list[str] = []
    prev = "("
    for tok in tokens:
        if tok != ")" and prev != "(":
            out.append(" ")
        out.append(tok)
        prev = tok
    return "".join(out)
