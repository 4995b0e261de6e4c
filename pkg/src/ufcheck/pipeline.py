"""End-to-end checking of source files.

Resolves imports, elaborates declarations in order and extends the
global environment, collecting diagnostics instead of stopping at the
first failure: a broken declaration is skipped and later independent
declarations still check.

Kernel recursion follows term depth, so the public entry points run on
a worker thread with a large stack (`deep_call`); CPython's default
main-thread stack is too small for deeply nested normal forms.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

from .check import CheckerConfig, DEFAULT_CONFIG, GlobalEnv, add_decl_timed
from .diagnostics import Diagnostic, E_STEP_LIMIT, StepLimitExceeded
from .elaborate import elaborate_decl
from .surface import ParsedFile, resolve_imports

_STACK_SIZE = 256 * 1024 * 1024
_RECURSION_LIMIT = 300_000
_KERNEL_THREAD = threading.local()


def deep_call(fn: Callable, *args, **kwargs):
    """Run fn on a thread with a large stack and a raised recursion limit."""
    if getattr(_KERNEL_THREAD, "active", False):
        return fn(*args, **kwargs)
    box: dict = {}

    def runner():
        _KERNEL_THREAD.active = True
        box["old_limit"] = sys.getrecursionlimit()
        sys.setrecursionlimit(_RECURSION_LIMIT)
        try:
            box["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # propagated to the caller below
            box["error"] = exc
        finally:
            sys.setrecursionlimit(box["old_limit"])

    old_stack = threading.stack_size(_STACK_SIZE)
    try:
        worker = threading.Thread(target=runner, name="ufcheck-kernel")
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_stack)
    if "error" in box:
        raise box["error"]
    return box["value"]


@dataclass
class CheckResult:
    env: GlobalEnv
    diagnostics: list[Diagnostic] = field(default_factory=list)
    n_definitions: int = 0
    n_axioms: int = 0
    timings: dict[str, float] = field(default_factory=dict)
    file_order: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics


def _check_files_inner(paths: list[str],
                       config: CheckerConfig) -> CheckResult:
    result = CheckResult(env=GlobalEnv())
    parsed_cache: dict[str, ParsedFile] = {}
    seen: set[str] = set()
    order: list[str] = []
    for path in paths:
        try:
            sub_order, sub_parsed = resolve_imports(path, cache=parsed_cache)
        except Diagnostic as diag:
            result.diagnostics.append(diag)
            continue
        parsed_cache.update(sub_parsed)
        for f in sub_order:
            if f not in seen:
                seen.add(f)
                order.append(f)
    result.file_order = order
    for f in order:
        for sdecl in parsed_cache[f].decls:
            try:
                name, kind, ty, body = elaborate_decl(sdecl, result.env)
                result.env, timing = add_decl_timed(
                    result.env, name, kind, ty, body,
                    span=sdecl.name_span, config=config)
                result.timings[name] = timing.seconds
                if kind == "axiom":
                    result.n_axioms += 1
                else:
                    result.n_definitions += 1
            except Diagnostic as diag:
                result.diagnostics.append(diag.with_span(sdecl.name_span))
            except StepLimitExceeded as exc:
                result.diagnostics.append(
                    Diagnostic(E_STEP_LIMIT, str(exc),
                               span=sdecl.name_span))
    return result


def check_files(paths: list[str],
                config: Optional[CheckerConfig] = None) -> CheckResult:
    """Check .uf files (imports included) and report the outcome."""
    return deep_call(_check_files_inner, list(paths),
                     config or DEFAULT_CONFIG)
