"""Построители термов лямбда-исчисления для тестов.

Индексы — уровни: переменная, связанная абстракцией в контексте ``n``,
получает индекс ``n``.
"""

from synpy.signature import Operation
from synpy.terms import Con, Term, Var

APP = Operation("app", (0, 0))
ABS = Operation("abs", (1,))


def app(f: Term, a: Term, *rest: Term) -> Term:
    out = Con(APP, (f, a))
    for r in rest:
        out = Con(APP, (out, r))
    return out


def lam(body: Term) -> Term:
    return Con(ABS, (body,))


def church(k: int, n: int = 0) -> Term:
    """``λf.λx. f (f … x)`` в контексте ``n``."""
    f, x = Var(n), Var(n + 1)
    body: Term = x
    for _ in range(k):
        body = app(f, body)
    return lam(lam(body))


def plus(n: int = 0) -> Term:
    """``λm.λk.λf.λx. m f (k f x)``."""
    m, k, f, x = Var(n), Var(n + 1), Var(n + 2), Var(n + 3)
    return lam(lam(lam(lam(app(app(m, f), app(app(k, f), x))))))


def omega(n: int = 0) -> Term:
    """``Ω = (λx.xx)(λx.xx)``."""
    w = lam(app(Var(n), Var(n)))
    return app(w, w)


# стороны-образцы поставляемых неравенств
BETA_LHS = "(comp (pair (comp (proj 0) (ctor abs)) (proj 1)) (ctor app))"
ETA_LHS = (
    "(comp (pair (comp (proj 0) weaken) (comp (bang) fresh))"
    " (comp (deriv (ctor app)) (ctor abs)))"
)


def lams(depth: int, body: Term) -> Term:
    """``depth`` вложенных абстракций над ``body``."""
    for _ in range(depth):
        body = lam(body)
    return body


def unlams(t: Term) -> tuple[int, Term]:
    """Снимает абстракции сверху: (сколько снято, тело)."""
    depth = 0
    while isinstance(t, Con) and t.op == ABS:
        t, depth = t.args[0], depth + 1
    return depth, t
