"""Batch command-line front end.

Commands:
    ufcheck check <files...>         check declarations (imports resolved)
    ufcheck assumptions <file> <name>  print the axioms a name depends on
    ufcheck normalize <file> <term>  print a term's normal form

Diagnostics go to standard error as `file:line:col: CODE: message`;
summaries and results go to standard output.  Exit codes: 0 success,
1 check/parse failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .check import CheckerConfig, infer
from .conversion import DEFAULT_MAX_STEPS, StepBudget, normalize
from .diagnostics import (Diagnostic, E_STEP_LIMIT, StepLimitExceeded,
                          UNKNOWN_SPAN)
from .elaborate import elaborate_term
from .pipeline import CheckResult, check_files, deep_call
from .printer import render_term
from .surface import parse_term_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ufcheck",
        description="Proof checker for .uf files: dependent type theory "
                    "with a tracked univalence axiom.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS,
                       metavar="N",
                       help="reduction-step budget (default %(default)s)")
        p.add_argument("--max-universe", type=int, default=None, metavar="N",
                       help="cap on universe literals (default unlimited)")
        p.add_argument("--no-color", action="store_true",
                       help="never color diagnostics")
        p.add_argument("--json", action="store_true",
                       help="emit diagnostics as JSON objects")

    p_check = sub.add_parser("check", help="check files and their imports")
    p_check.add_argument("paths", nargs="+", metavar="FILE")
    common(p_check)

    p_assume = sub.add_parser(
        "assumptions", help="print the transitive axiom set of a name")
    p_assume.add_argument("path", metavar="FILE")
    p_assume.add_argument("name", metavar="NAME")
    common(p_assume)

    p_norm = sub.add_parser(
        "normalize", help="print the normal form of a term or name")
    p_norm.add_argument("path", metavar="FILE")
    p_norm.add_argument("term", metavar="TERM")
    common(p_norm)
    return parser


class _Emitter:
    def __init__(self, args: argparse.Namespace):
        self.as_json = args.json
        self.color = (not args.no_color and not args.json
                      and sys.stderr.isatty())

    def emit(self, diag: Diagnostic) -> None:
        if self.as_json:
            span = diag.span or UNKNOWN_SPAN
            obj = {"code": diag.code, "file": span.file, "line": span.line,
                   "col": span.column, "message": diag.message}
            print(json.dumps(obj), file=sys.stderr)
            return
        line = diag.render()
        if self.color:
            line = line.replace(diag.code, f"\x1b[31m{diag.code}\x1b[0m", 1)
        print(line, file=sys.stderr)

    def emit_all(self, diags) -> None:
        for d in diags:
            self.emit(d)


def _config(args: argparse.Namespace) -> CheckerConfig:
    return CheckerConfig(max_steps=args.max_steps,
                         max_universe=args.max_universe)


def _require_files(paths, emitter) -> bool:
    ok = True
    for p in paths:
        if not os.path.isfile(p):
            print(f"ufcheck: cannot open '{p}': no such file",
                  file=sys.stderr)
            ok = False
    return ok


def _checked(paths, args, emitter) -> Optional[CheckResult]:
    result = check_files(list(paths), _config(args))
    if result.diagnostics:
        emitter.emit_all(result.diagnostics)
        return None
    return result


def cmd_check(args: argparse.Namespace, emitter: _Emitter) -> int:
    if not _require_files(args.paths, emitter):
        return EXIT_USAGE
    result = check_files(list(args.paths), _config(args))
    emitter.emit_all(result.diagnostics)
    if result.diagnostics:
        return EXIT_FAIL
    print(f"checked {result.n_definitions} definitions, "
          f"{result.n_axioms} axioms")
    return EXIT_OK


def cmd_assumptions(args: argparse.Namespace, emitter: _Emitter) -> int:
    if not _require_files([args.path], emitter):
        return EXIT_USAGE
    result = _checked([args.path], args, emitter)
    if result is None:
        return EXIT_FAIL
    decl = result.env.lookup(args.name)
    if decl is None:
        emitter.emit(Diagnostic("E001",
                                f"unknown declaration '{args.name}'"))
        return EXIT_FAIL
    if not decl.axioms_used:
        print("(closed)")
    else:
        for axiom in sorted(decl.axioms_used):
            print(axiom)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace, emitter: _Emitter) -> int:
    if not _require_files([args.path], emitter):
        return EXIT_USAGE
    result = _checked([args.path], args, emitter)
    if result is None:
        return EXIT_FAIL
    config = _config(args)

    def work() -> str:
        surface = parse_term_text(args.term)
        core = elaborate_term(surface, [], result.env)
        budget = StepBudget(config.max_steps)
        infer(result.env, (), core, config, budget)
        nf = normalize(result.env, core, budget=budget)
        return render_term(result.env, nf)

    try:
        print(deep_call(work))
        return EXIT_OK
    except Diagnostic as diag:
        emitter.emit(diag)
        return EXIT_FAIL
    except StepLimitExceeded as exc:
        emitter.emit(Diagnostic(E_STEP_LIMIT, str(exc)))
        return EXIT_FAIL


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    emitter = _Emitter(args)
    try:
        if args.command == "check":
            return cmd_check(args, emitter)
        if args.command == "assumptions":
            return cmd_assumptions(args, emitter)
        if args.command == "normalize":
            return cmd_normalize(args, emitter)
    except Diagnostic as diag:
        emitter.emit(diag)
        return EXIT_FAIL
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
