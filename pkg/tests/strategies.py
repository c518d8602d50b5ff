"""Стратегии hypothesis для корректных по областям видимости λ-термов."""

import functools

from hypothesis import strategies as st

from lam import app, lam
from synpy.terms import Renaming, SubstMap, Var


@functools.lru_cache(maxsize=None)
def terms(n: int, depth: int = 4) -> st.SearchStrategy:
    """Термы в контексте ``n`` глубины не больше ``depth``."""
    leaves = [st.builds(Var, st.integers(0, n - 1))] if n else []
    if depth == 0:
        return st.one_of(*leaves) if leaves else st.just(lam(Var(0)))
    return st.one_of(
        *leaves,
        st.builds(app, terms(n, depth - 1), terms(n, depth - 1)),
        st.builds(lam, terms(n + 1, depth - 1)),
    )


@st.composite
def scoped(draw, max_ctx: int = 3):
    n = draw(st.integers(0, max_ctx))
    return n, draw(terms(n))


@st.composite
def subst_maps(draw, m: int, n: int):
    return SubstMap(tuple(draw(terms(n, 3)) for _ in range(m)), n)


@st.composite
def renamings(draw, m: int):
    n = draw(st.integers(1 if m else 0, 3))
    return Renaming(tuple(draw(st.integers(0, n - 1)) for _ in range(m)), n)
