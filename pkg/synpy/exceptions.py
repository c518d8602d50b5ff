"""Исключения synpy."""

from __future__ import annotations

from typing import Any


class SynError(Exception):
    """Базовое исключение библиотеки."""


class ParseError(SynError):
    """Текст не разбирается (JSON сигнатуры или s-выражение).

    ``line`` и ``col`` считаются с единицы; ``0`` — позиция неизвестна.
    """

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f" (строка {line}, столбец {col})" if line else ""
        super().__init__(f"{message}{where}")


class ShapeError(SynError):
    """Полуравенство (HExp) плохо типизировано.

    ``path`` — путь до подвыражения, например ``("comp.first", "pair.1")``.
    """

    def __init__(self, path: tuple[str, ...], expected: Any, found: Any):
        self.path = path
        self.expected = expected
        self.found = found
        where = "/".join(path) or "<корень>"
        super().__init__(f"{where}: ожидалось {expected}, получено {found}")


class PatternError(SynError):
    """Сторона-образец неравенства нарушает дисциплину образцов."""


class ValidationError(SynError):
    """Сигнатура разобрана, но нарушает инвариант (имена, формы, образцы).

    Исходная причина доступна через ``__cause__``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class ScopeError(SynError):
    """Терм не укладывается в свой контекст (проверяемый режим ядра)."""


class ModelError(SynError):
    """Неизвестная модель или некорректная таблица перестановок."""


class SamplingError(SynError):
    """Для сигнатуры и контекста нельзя построить замкнутый терм."""


class UsageError(SynError):
    """Неверные аргументы командной строки."""
