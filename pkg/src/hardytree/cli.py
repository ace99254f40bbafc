"""Command line front end: ``means``, ``norm``, ``op-analyze`` and ``scenario``.

Exit codes: 0 success (inconclusive verdicts included), 1 a failed check in a
scenario, 2 bad arguments or input document, 3 a level too large to
enumerate, 4 unknown scenario.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import DocumentError, HardyTreeError, LevelTooLarge
from .functions import as_exponent
from .operators import analyze
from .scenarios import REGISTRY, run_scenario
from .serialize import dumps, format_scalar, function_from_document
from .space import level_means, norm
from .tree import enumeration_limit

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_TOO_LARGE, EXIT_UNKNOWN = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return value


def _exponent(text: str) -> float:
    try:
        return as_exponent(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_positive_int, default=None, help="branching number (taken from the input if omitted)")
    common.add_argument("--p", type=_exponent, default=2.0, help="exponent in (0, inf], or 'inf'")
    common.add_argument("--depth", type=_nonnegative_int, default=6)
    common.add_argument("--cap", type=_positive_int, default=None, help="largest level size that may be enumerated")
    common.add_argument("--tol", type=_positive_float, default=1e-9)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--input", help="path to a function document, or the document itself")

    parser = _Parser(prog="hardytree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("means", parents=[common], help="level means M_p(n, f) for n <= depth")
    sub.add_parser("norm", parents=[common], help="norm of f with exactness flag")
    sub.add_parser("op-analyze", parents=[common], help="analyze the multiplication operator with symbol f")
    sc = sub.add_parser("scenario", help="list or run built-in scenarios")
    sc_sub = sc.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sc_sub.add_parser("list", parents=[common])
    run = sc_sub.add_parser("run", parents=[common])
    run.add_argument("name")
    return parser


def _load_input(args):
    if not args.input:
        raise DocumentError("--input is required")
    text = args.input
    if not text.lstrip().startswith("{") and os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    return function_from_document(doc, args.q)


def _emit(payload, fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(payload["header"])
        writer.writerows(payload["rows"])
        out.write(buf.getvalue())
    else:
        out.write(dumps(payload) + "\n")


def _cmd_means(args, out) -> int:
    f = _load_input(args)
    means = level_means(f, args.p, args.depth)
    if args.format == "csv":
        rows = [[n, format_scalar(m), f.method] for n, m in enumerate(means)]
        _emit({"header": ["n", "mean", "method"], "rows": rows}, "csv", out)
    else:
        _emit([{"n": n, "mean": m, "method": f.method} for n, m in enumerate(means)], "json", out)
    return EXIT_OK


def _cmd_norm(args, out) -> int:
    f = _load_input(args)
    report = norm(f, args.p, args.depth).to_dict()
    if args.format == "csv":
        keys = sorted(report)
        _emit({"header": keys, "rows": [[format_scalar(report[k]) for k in keys]]}, "csv", out)
    else:
        _emit(report, "json", out)
    return EXIT_OK


def _cmd_op_analyze(args, out) -> int:
    psi = _load_input(args)
    report = analyze(psi, args.p, args.depth, args.tol).to_dict()
    if args.format == "csv":
        rows = [[k, dumps(report[k])] for k in sorted(report)]
        _emit({"header": ["field", "value"], "rows": rows}, "csv", out)
    else:
        _emit(report, "json", out)
    return EXIT_OK


def _cmd_scenario(args, out, err) -> int:
    if args.action == "list":
        if args.format == "csv":
            rows = [[name, REGISTRY[name].description] for name in sorted(REGISTRY)]
            _emit({"header": ["name", "description"], "rows": rows}, "csv", out)
        else:
            _emit([{"name": n, "description": REGISTRY[n].description} for n in sorted(REGISTRY)], "json", out)
        return EXIT_OK
    if args.name not in REGISTRY:
        err.write(f"UnknownScenario: {args.name!r}; known: {', '.join(sorted(REGISTRY))}\n")
        return EXIT_UNKNOWN
    result = run_scenario(args.name)
    if args.format == "csv":
        rows = [[c.name, c.tag, "pass" if c.passed else "FAIL", format_scalar(c.residual)] for c in result.checks]
        _emit({"header": ["check", "tag", "status", "residual"], "rows": rows}, "csv", out)
    else:
        _emit(result.to_dict(), "json", out)
    for c in result.checks:
        if not c.passed:
            err.write(f"FAIL [{c.tag}] {c.name}: residual {c.residual!r} {c.detail}\n")
    return EXIT_OK if result.theory_passed else EXIT_CHECK_FAILED


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"UsageError: {exc}\n")
        return EXIT_USAGE
    try:
        if args.cap is not None:
            with enumeration_limit(args.cap):
                return _dispatch(args, out, err)
        return _dispatch(args, out, err)
    except LevelTooLarge as exc:
        err.write(f"LevelTooLarge: {exc}\n")
        return EXIT_TOO_LARGE
    except (HardyTreeError, ValueError, OSError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def _dispatch(args, out, err) -> int:
    if args.command == "means":
        return _cmd_means(args, out)
    if args.command == "norm":
        return _cmd_norm(args, out)
    if args.command == "op-analyze":
        return _cmd_op_analyze(args, out)
    return _cmd_scenario(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
