"""Command line front end.

    monoidal eval "invert(1+x)" --ring rat --order 6
    monoidal series exp --param 2
    monoidal tower "exp(x)" --levels 4
    monoidal check euler

Exit status: 0 on success, 1 when the kernel rejects the input (or a check
fails), 2 on usage and syntax errors.  All computation happens in the
kernel; this module only parses arguments and prints.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .completion import completion_suite, tower_of
from .errors import KernelError
from .expr import ExpressionSyntaxError, Interpreter, parse, render
from .monoid_ring import MonoidRingElement, element_to_json
from .rings import QQi, Ring, ring_from_selector
from .series import NAMED_SERIES, PowerSeries, derivative_laws_suite, euler_suite, named_series

DEFAULT_ORDER = 10
ORDER_ENV = "MONOIDAL_DEFAULT_ORDER"


@dataclass
class CliConfig:
    ring: Ring
    order: int
    variables: tuple[str, ...]
    output: str
    strict: bool


class UsageError(Exception):
    pass


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--ring", default=d if suppress else "rat",
                   help="coefficient ring: int, rat, gauss or mod:n (default rat)")
    p.add_argument("--order", type=int, default=d,
                   help=f"truncation order for series output (default ${ORDER_ENV} or {DEFAULT_ORDER})")
    p.add_argument("--vars", default=d if suppress else "", help="comma separated variable declarations")
    p.add_argument("--format", dest="output", choices=("text", "json"), default=d if suppress else "text")
    p.add_argument("--strict-vars", action="store_true", default=d if suppress else False,
                   help="reject variables not listed in --vars")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monoidal", description="Exact monoid rings, polynomials and power series.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("expr")
    _add_common(p, suppress=True)

    p = sub.add_parser("series", help="print a named series")
    p.add_argument("name", choices=NAMED_SERIES)
    p.add_argument("--var", default=None, help="series variable (default: first of --vars, else x)")
    p.add_argument("--param", default=None, help="scale a: coefficient of x^n is multiplied by a^n")
    _add_common(p, suppress=True)

    p = sub.add_parser("tower", help="print the truncation tower of an expression")
    p.add_argument("expr")
    p.add_argument("--levels", type=int, required=True)
    _add_common(p, suppress=True)

    p = sub.add_parser("check", help="run an identity suite")
    p.add_argument("suite", choices=("euler", "derivlaws", "completion"))
    p.add_argument("--seed", type=int, default=0)
    _add_common(p, suppress=True)
    return parser


def make_config(args: argparse.Namespace) -> CliConfig:
    try:
        ring = ring_from_selector(args.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    order = args.order if args.order is not None else default_order()
    if order < 1:
        raise UsageError("the truncation order must be at least 1")
    variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    return CliConfig(ring, order, variables, args.output, args.strict_vars)


def render_value(value, cfg: CliConfig) -> str:
    if cfg.output == "json":
        if isinstance(value, PowerSeries):
            return json.dumps(value.to_json(cfg.order))
        return json.dumps(element_to_json(value))
    return render(value, cfg.order)


def run(cfg: CliConfig, args: argparse.Namespace, out: TextIO) -> int:
    interp = Interpreter(cfg.ring, cfg.variables, cfg.strict)
    if args.command == "eval":
        value = interp.run(parse(args.expr))
        print(render_value(value, cfg), file=out)
        return 0
    if args.command == "series":
        var = args.var or (cfg.variables[0] if cfg.variables else "x")
        interp.check_var(var)
        scale = None
        if args.param is not None:
            param = interp.run(parse(args.param))
            if not (isinstance(param, MonoidRingElement) and all(m.is_identity() for m in param.support())):
                raise UsageError("--param must be a constant")
            scale = param.coefficient(param.parent.monoid.identity)
        print(render_value(named_series(args.name, cfg.ring, var, scale), cfg), file=out)
        return 0
    if args.command == "tower":
        if args.levels < 1:
            raise UsageError("--levels must be at least 1")
        tower = tower_of(interp.run(parse(args.expr)))
        if cfg.output == "json":
            print(json.dumps(tower.to_json(args.levels)), file=out)
        else:
            print(tower.to_text(args.levels), file=out)
        return 0
    if args.suite == "euler":
        report = euler_suite(QQi, cfg.order)
    elif args.suite == "derivlaws":
        report = derivative_laws_suite(order=cfg.order, ring=cfg.ring, seed=args.seed)
    else:
        report = completion_suite(cfg.ring, cfg.order, seed=args.seed)
    if cfg.output == "json":
        print(json.dumps({"title": report.title, "ok": report.ok, "checks": report.checks}), file=out)
    else:
        print(report, file=out)
    return 0 if report.ok else 1


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        return run(cfg, args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except ExpressionSyntaxError as exc:
        print(f"error: {exc}", file=err)
        print(exc.caret(), file=err)
        return 2
    except KernelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
