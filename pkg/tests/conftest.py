"""Общие фикстуры: поставляемые сигнатуры и намеренно сломанные модели."""

import os
from typing import Optional

# проверяемый режим ядра включается до импорта synpy
os.environ.setdefault("SYN_CHECKED", "1")

import pytest  # noqa: E402

from lam import ABS, APP  # noqa: E402
from synpy.models import ChaoticModel, DiscreteModel  # noqa: E402
from synpy.modules import ProdElem  # noqa: E402
from synpy.signature import Operation, Signature2, load_signature  # noqa: E402
from synpy.terms import Con, Term, Var  # noqa: E402


class BrokenUnitModel(DiscreteModel):
    """Единица указывает на соседнюю переменную."""

    name = "broken-unit"

    def eta(self, n: int, i: int) -> Term:
        return Var((i + 1) % n)


class LeakyAbsModel(DiscreteModel):
    """abs возвращает тело как есть: связанная переменная выходит из области видимости."""

    name = "leaky-abs"

    def op(self, op: Operation, e: ProdElem[Term]) -> Term:
        if op == ABS:
            return e.values[0]
        return Con(op, e.values)


class ConstantVarModel(DiscreteModel):
    """В непустом контексте любая операция даёт первую переменную."""

    name = "constant-var"

    def op(self, op: Operation, e: ProdElem[Term]) -> Term:
        if e.ctx > 0:
            return Var(0)
        return Con(op, e.values)


class IrreflexiveModel(ChaoticModel):
    """Порядок «термы различны»."""

    name = "irreflexive"

    def leq(self, n: int, a: Term, b: Term, *, fuel: Optional[int] = None) -> Optional[bool]:
        return a != b


class EmptyContextSwapModel(ChaoticModel):
    """Переставляет аргументы app только в пустом контексте."""

    name = "empty-context-swap"

    def op(self, op: Operation, e: ProdElem[Term]) -> Term:
        if op == APP and e.ctx == 0:
            return Con(op, (e.values[1], e.values[0]))
        return Con(op, e.values)


@pytest.fixture(scope="session")
def beta() -> Signature2:
    return load_signature("lambda-beta.sig.json")


@pytest.fixture(scope="session")
def eta() -> Signature2:
    return load_signature("lambda-eta.sig.json")


@pytest.fixture(scope="session")
def beta_eta() -> Signature2:
    return load_signature("lambda-beta-eta.sig.json")


@pytest.fixture(scope="session")
def sig(beta):
    return beta.sig


@pytest.fixture
def broken_unit(sig) -> BrokenUnitModel:
    return BrokenUnitModel(sig)


@pytest.fixture
def one_sided_swap(sig) -> EmptyContextSwapModel:
    return EmptyContextSwapModel(sig)


@pytest.fixture
def leaky_abs(sig) -> LeakyAbsModel:
    return LeakyAbsModel(sig)


@pytest.fixture
def constant_var(sig) -> ConstantVarModel:
    return ConstantVarModel(sig)


@pytest.fixture
def irreflexive(sig) -> IrreflexiveModel:
    return IrreflexiveModel(sig)
