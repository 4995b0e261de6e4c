"""Library manifest handling: corpus checking and axiom-budget audits.

Manifest line format (`#` comments allowed):

    <tier> <name> <file> [budget: a,b,...]

Tier 1 entries are mandatory; tier 2 are stretch results.  An entry's
budget is the set of axiom names it is allowed to depend on; an empty
budget means the entry must be axiom-free.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Union

from .check import CheckerConfig, GlobalEnv
from .diagnostics import Diagnostic, E_PARSE, SourceSpan
from .pipeline import CheckResult, check_files


@dataclass(frozen=True)
class ManifestEntry:
    tier: int
    name: str
    file: str
    budget: frozenset[str]


@dataclass
class LibraryManifest:
    path: str
    entries: list[ManifestEntry]

    def files(self) -> list[str]:
        """Entry files, manifest-relative, in first-appearance order."""
        base = os.path.dirname(os.path.abspath(self.path))
        seen: set[str] = set()
        ordered: list[str] = []
        for e in self.entries:
            p = e.file if os.path.isabs(e.file) else os.path.join(base,
                                                                  e.file)
            real = os.path.realpath(p)
            if real not in seen:
                seen.add(real)
                ordered.append(real)
        return ordered


def parse_manifest(path: str) -> LibraryManifest:
    entries: list[ManifestEntry] = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise Diagnostic(E_PARSE, f"cannot read {path}: {exc.strerror}",
                         span=SourceSpan(path, 1, 1)) from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        span = SourceSpan(path, lineno, 1)
        if len(parts) < 3:
            raise Diagnostic(E_PARSE, "manifest line needs "
                             "'<tier> <name> <file>'", span=span)
        tier_text, name, file = parts[0], parts[1], parts[2]
        if tier_text not in ("1", "2"):
            raise Diagnostic(E_PARSE, f"bad tier {tier_text!r}", span=span)
        budget: frozenset[str] = frozenset()
        rest = parts[3:]
        if rest:
            if rest[0] != "budget:" or len(rest) != 2:
                raise Diagnostic(E_PARSE, "expected 'budget: a,b,...'",
                                 span=span)
            budget = frozenset(x for x in rest[1].split(",") if x)
        entries.append(ManifestEntry(int(tier_text), name, file, budget))
    return LibraryManifest(path, entries)


@dataclass
class EntryReport:
    entry: ManifestEntry
    passed: bool
    axioms: Optional[frozenset[str]]
    seconds: float
    message: str = ""


@dataclass
class LibraryReport:
    entries: list[EntryReport]
    diagnostics: list
    env: GlobalEnv
    total_seconds: float = 0.0
    check_result: Optional[CheckResult] = None

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries) and not self.diagnostics

    def failures(self) -> list[EntryReport]:
        return [e for e in self.entries if not e.passed]

    def summary_lines(self) -> list[str]:
        lines = []
        for er in self.entries:
            status = "ok  " if er.passed else "FAIL"
            axioms = "closed" if not er.axioms else \
                ",".join(sorted(er.axioms))
            lines.append(f"{status} tier{er.entry.tier} "
                         f"{er.entry.name} [{axioms}] "
                         f"({er.seconds * 1000:.1f} ms)")
        return lines


def check_library(manifest: Union[str, LibraryManifest],
                  config: Optional[CheckerConfig] = None) -> LibraryReport:
    """Check every manifest entry and report status, axioms and timing."""
    if isinstance(manifest, str):
        manifest = parse_manifest(manifest)
    start = time.perf_counter()
    result = check_files(manifest.files(), config)
    reports: list[EntryReport] = []
    for entry in manifest.entries:
        decl = result.env.lookup(entry.name)
        if decl is None:
            reports.append(EntryReport(entry, False, None, 0.0,
                                       "declaration did not check"))
        else:
            reports.append(EntryReport(entry, True, decl.axioms_used,
                                       result.timings.get(entry.name, 0.0)))
    return LibraryReport(entries=reports, diagnostics=result.diagnostics,
                         env=result.env,
                         total_seconds=time.perf_counter() - start,
                         check_result=result)


@dataclass(frozen=True)
class BudgetViolation:
    name: str
    excess: frozenset[str]
    message: str

    def __str__(self) -> str:
        return self.message


def audit_budgets(manifest: Union[str, LibraryManifest],
                  env: GlobalEnv) -> list[BudgetViolation]:
    """Check that every entry's axiom set stays inside its budget."""
    if isinstance(manifest, str):
        manifest = parse_manifest(manifest)
    violations: list[BudgetViolation] = []
    for entry in manifest.entries:
        decl = env.lookup(entry.name)
        if decl is None:
            violations.append(BudgetViolation(
                entry.name, frozenset(),
                f"{entry.name}: not present in the checked environment"))
            continue
        excess = decl.axioms_used - entry.budget
        if excess:
            listed = ", ".join(sorted(excess))
            violations.append(BudgetViolation(
                entry.name, frozenset(excess),
                f"{entry.name}: uses axioms outside its budget: {listed}"))
    return violations


def bundled_lib_dir() -> str:
    """Directory of the corpus shipped with the package."""
    return str(resources.files("ufcheck") / "lib")


def bundled_manifest_path() -> str:
    return os.path.join(bundled_lib_dir(), "library.manifest")
