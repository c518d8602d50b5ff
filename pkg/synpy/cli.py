"""Командная строка ``syn``.

Коды выхода::

    0  успех
    1  нарушен закон или неравенство
    2  ошибка использования или разбора
    3  исчерпано топливо (normalize; leq при --strict)

Весь результат идёт в stdout, диагностика — в stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Optional, Sequence

from synpy import __version__
from synpy.exceptions import SynError, UsageError
from synpy.halfeq import VerdictKind, naturality_check, satisfies
from synpy.hexp import Id, format_hexp
from synpy.laws import (
    Report,
    check_kernel_laws,
    check_module_laws,
    check_monad_laws,
    check_order_laws,
    check_rep_morphism,
)
from synpy.models import (
    Model,
    check_init_monad_morphism,
    check_init_monotone,
    init_fold,
    parse_model,
)
from synpy.reduction import (
    STRATEGIES,
    FuelExhausted,
    normalize,
    search,
    step,
    trace_records,
)
from synpy.signature import Signature2, dump_signature, load_signature
from synpy.syntax import format_term, parse_context, parse_term
from synpy.terms import SubstMap, Term, Var, subst

log = logging.getLogger(__name__)

__all__ = ["build_parser", "run", "main"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_FUEL = 3

_DEFAULT_FUEL = 1000
_DEFAULT_SAMPLES = 200
_DEFAULT_SEED = 0
_MODULE_DESCRIPTORS: tuple[tuple[int, ...], ...] = ((0,), (1,), (2, 0))


# ──────────────────────────── Вывод ────────────────────────────

def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _emit_json(data: Any) -> None:
    _emit(json.dumps(data, ensure_ascii=False))


def _signature(args: argparse.Namespace) -> Signature2:
    ref = args.sig or os.environ.get("SYN_SIG")
    if not ref:
        raise UsageError("не задана сигнатура: --sig или переменная окружения SYN_SIG")
    try:
        return load_signature(ref)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None


def _context(args: argparse.Namespace) -> tuple[str, ...]:
    return parse_context(args.context)


def _term(sig2: Signature2, text: str, context: Sequence[str]) -> Term:
    return parse_term(sig2.sig, text, context)


def _model(args: argparse.Namespace, sig2: Signature2) -> Model:
    return parse_model(args.model, sig2, fuel=args.fuel)


def _split_top(text: str) -> list[str]:
    """Делит по запятым верхнего уровня: ``"x=(app a b),y=z"`` → две записи."""
    parts: list[str] = []
    current: list[str] = []
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


# ──────────────────────────── Команды ────────────────────────────

def cmd_check(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    if args.json:
        sys.stdout.write(dump_signature(sig2))
        return EXIT_OK
    _emit(f"сигнатура {sig2.name}: {len(sig2.sig)} операций, {len(sig2.ineqs)} неравенств")
    for op in sig2.sig:
        _emit(f"  {op.name} : {list(op.arity)}")
    for ineq in sig2.ineqs:
        cod = ineq.cod(sig2.sig)
        _emit(f"  {ineq.name} : {list(ineq.dom)} → {list(cod)}, образец {ineq.pattern_side}")
        _emit(f"    lhs {format_hexp(ineq.lhs)}")
        _emit(f"    rhs {format_hexp(ineq.rhs)}")
    return EXIT_OK


def cmd_parse(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    context = _context(args)
    t = _term(sig2, args.term, context)
    printed = format_term(t, context)
    if args.json:
        _emit_json({"term": printed, "context": list(context), "repr": repr(t)})
    else:
        _emit(printed)
    return EXIT_OK


def cmd_subst(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    source = _context(args)
    target = parse_context(args.into) if args.into is not None else source
    t = _term(sig2, args.term, source)
    images: dict[str, Term] = {}
    for entry in _split_top(args.map):
        name, sep, text = entry.partition("=")
        name = name.strip()
        if not sep or name not in source:
            raise UsageError(f"--map: {entry!r} не задаёт образ переменной контекста {list(source)}")
        images[name] = _term(sig2, text, target)
    full = []
    for name in source:
        if name in images:
            full.append(images[name])
        elif name in target:
            full.append(Var(target.index(name)))
        else:
            raise UsageError(f"--map: нет образа для {name!r}, а в --into её нет")
    result = subst(SubstMap(tuple(full), len(target)), t)
    printed = format_term(result, target)
    if args.json:
        _emit_json({"term": printed, "context": list(target)})
    else:
        _emit(printed)
    return EXIT_OK


def cmd_step(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    context = _context(args)
    t = _term(sig2, args.term, context)
    results = [format_term(r, context) for r in step(sig2, len(context), t)]
    if args.json:
        _emit_json({"terms": results})
    else:
        for printed in results:
            _emit(printed)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    context = _context(args)
    t = _term(sig2, args.term, context)
    result = normalize(sig2, len(context), t, args.strategy, args.fuel)
    exhausted = isinstance(result, FuelExhausted)
    printed = format_term(result.term, context)
    if args.trace:
        for record in trace_records(sig2, result.trace, context):
            if args.json:
                _emit_json(record)
            else:
                where = f" [{record['inequation']} @ {record['position']}]" if record["position"] else ""
                _emit(f"{record['step']}{where}: {record['term']}")
    if args.json:
        status = "fuel-exhausted" if exhausted else "normal"
        _emit_json({"status": status, "term": printed, "steps": result.steps})
    elif not args.trace:
        _emit(printed)
    if exhausted:
        print(f"syn: топливо исчерпано после {result.steps} шагов", file=sys.stderr)
        return EXIT_FUEL
    return EXIT_OK


def cmd_leq(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    context = _context(args)
    x = _term(sig2, args.left, context)
    y = _term(sig2, args.right, context)
    found = search(sig2, len(context), x, y, args.fuel)
    answer = "yes" if found.found else "unknown"
    if args.json:
        _emit_json({
            "answer": answer,
            "expanded": found.expanded,
            "visited": found.visited,
            "exhausted": found.exhausted,
            "path": [format_term(p, context) for p in found.path],
        })
    else:
        _emit(answer)
        if found.found and len(found.path) > 1:
            for p in found.path:
                _emit(f"  {format_term(p, context)}")
    if not found.found and args.strict:
        return EXIT_FUEL
    return EXIT_OK


def _print_reports(args: argparse.Namespace, reports: list[Report]) -> int:
    if args.json:
        _emit_json({"reports": [r.to_raw(deterministic=args.deterministic) for r in reports]})
    else:
        for report in reports:
            _emit(report.format(deterministic=args.deterministic))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_laws(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    model = _model(args, sig2)
    samples, seed = args.samples, args.seed
    reports = [check_kernel_laws(sig2.sig, samples, seed), check_monad_laws(model, samples, seed)]
    reports += [check_module_laws(model, d, samples, seed) for d in _MODULE_DESCRIPTORS]
    reports.append(check_rep_morphism(model, samples, seed))
    reports.append(check_order_laws(model, samples, seed, sig2=sig2))
    reports.append(check_init_monad_morphism(model, samples, seed))
    for ineq in sig2.ineqs:
        for side, e in (("lhs", ineq.lhs), ("rhs", ineq.rhs)):
            reports.append(naturality_check(
                e, model, samples, seed, ineq.dom, name=f"naturality:{ineq.name}.{side}",
            ))
        reports.append(naturality_check(
            Id(), model, samples, seed, ineq.dom, name=f"naturality:id{list(ineq.dom)}",
        ))
    reports.append(check_init_monotone(model, samples, seed, sig2=sig2))
    log.info("Законы: %d наборов", len(reports))
    return _print_reports(args, reports)


def cmd_satisfies(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    model = _model(args, sig2)
    ineqs = [sig2.ineq(args.ineq)] if args.ineq else list(sig2.ineqs)
    verdicts = [satisfies(model, i, args.samples, args.seed) for i in ineqs]
    if args.json:
        _emit_json({"verdicts": [v.to_raw() for v in verdicts]})
    else:
        for v in verdicts:
            _emit(f"{v.inequation} [{v.model}]: {v.kind.value}")
            if v.witness is not None:
                for key, value in v.witness.input.items():
                    _emit(f"  {key} = {value}")
                _emit(f"  слева:  {v.witness.lhs}")
                _emit(f"  справа: {v.witness.rhs}")
    if any(v.kind is VerdictKind.VIOLATED for v in verdicts):
        return EXIT_FAILED
    return EXIT_OK


def cmd_fold(args: argparse.Namespace) -> int:
    sig2 = _signature(args)
    model = _model(args, sig2)
    context = _context(args)
    n = len(context)
    t = _term(sig2, args.term, context)
    value = init_fold(model, n, t)
    printed = model.render(n, value, context)
    if args.json:
        _emit_json({"model": model.selector, "value": printed})
    else:
        _emit(printed)
    return EXIT_OK


# ──────────────────────────── Разбор аргументов ────────────────────────────

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sig", default=None, help="файл сигнатуры или имя поставляемой (SYN_SIG)")
    common.add_argument("--context", default="", help='имена свободных переменных, например "y,z"')
    common.add_argument("--json", action="store_true", help="вывод в JSON")
    common.add_argument("--fuel", type=int, default=_DEFAULT_FUEL)
    common.add_argument("-v", "--verbose", action="count", default=0)
    return common


def _sampling() -> argparse.ArgumentParser:
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=_DEFAULT_SAMPLES)
    sampling.add_argument("--seed", type=int, default=_DEFAULT_SEED)
    sampling.add_argument("--model", default="syntactic", help="syntactic, discrete, chaotic, freevars, permuted:app=1,0")
    sampling.add_argument("--deterministic", action="store_true", help="без времени выполнения в выводе")
    return sampling


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syn", description="Синтаксис со связыванием по 2-сигнатуре: термы, редукции, модели.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)
    common, sampling = _common(), _sampling()

    def add(
        name: str,
        func: Callable[[argparse.Namespace], int],
        summary: str,
        *parents: argparse.ArgumentParser,
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=summary, parents=[common, *parents])
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "проверить сигнатуру")
    add("parse", cmd_parse, "разобрать и напечатать терм").add_argument("term")

    p = add("subst", cmd_subst, "подставить термы вместо переменных")
    p.add_argument("term")
    p.add_argument("--map", required=True, help='образы переменных: "x=(term),..."')
    p.add_argument("--into", default=None, help="контекст результата (по умолчанию --context)")

    add("step", cmd_step, "все редукты за один шаг").add_argument("term")

    p = add("normalize", cmd_normalize, "нормализовать терм")
    p.add_argument("term")
    p.add_argument("--strategy", choices=STRATEGIES, default="outermost")
    p.add_argument("--trace", action="store_true", help="печатать каждый шаг")

    p = add("leq", cmd_leq, "найти путь редукций x ↠ y")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--strict", action="store_true", help="код 3, если ответ неизвестен")

    add("laws", cmd_laws, "проверить законы монады, модулей и морфизмов", sampling)

    p = add("satisfies", cmd_satisfies, "выполняются ли неравенства в модели", sampling)
    p.add_argument("--ineq", default=None, help="имя неравенства (по умолчанию все)")

    p = add("fold", cmd_fold, "свернуть терм в модель")
    p.add_argument("term")
    p.add_argument("--model", default="syntactic")
    return parser


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Разбирает аргументы и выполняет команду; возвращает код выхода."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (SynError, KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"syn: ошибка: {message}", file=sys.stderr)
        return EXIT_USAGE
    except RecursionError:
        log.debug("Превышен предел рекурсии", exc_info=True)
        print("syn: ошибка: терм слишком глубок для этой команды", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
