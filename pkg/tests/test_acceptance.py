"""Acceptance criteria, one test per criterion.

Each test prints a single `ACCEPTANCE <n> PASS|FAIL` line (visible with
`pytest -s` or in failure output) and asserts the criterion at its
stated tolerance.
"""

import os
import time

import pytest

from ufcheck.check import check as kernel_check
from ufcheck.cli import main as cli_main
from ufcheck.conversion import definitionally_equal, normalize
from ufcheck.elaborate import BUILTIN_NAMES, elaborate_term
from ufcheck.library import (audit_budgets, bundled_lib_dir,
                             bundled_manifest_path, check_library,
                             parse_manifest)
from ufcheck.pipeline import check_files, deep_call
from ufcheck.printer import render_term
from ufcheck.surface import (SApp, SArrow, SEq, SLam, SNum, SPi, SSigma,
                             SType, SVar, parse_term_text, resolve_imports)

from test_surface import NEGATIVE_FIXTURES, fixture_path


def report(criterion: int, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion} {status}{suffix}")
    assert ok, f"criterion {criterion} failed: {detail}"


def lib(name: str) -> str:
    return os.path.join(bundled_lib_dir(), name)


def elab(env, text: str):
    return elaborate_term(parse_term_text(text), [], env)


def test_criterion_1_full_corpus_check():
    start = time.perf_counter()
    fresh = check_library(bundled_manifest_path())
    elapsed = time.perf_counter() - start
    tier1 = [e for e in fresh.entries if e.entry.tier == 1]
    ok = (not fresh.diagnostics
          and len(tier1) >= 30
          and all(e.passed for e in tier1)
          and elapsed < 10.0)
    report(1, ok, f"{len(tier1)} tier-1 entries, "
                  f"{len(fresh.diagnostics)} diagnostics, {elapsed:.2f}s")


TRANSPORT_CASES = [
    # (motive family, base point, transported value)
    ("fun (k : Nat) => Nat", "0", "7"),
    ("fun (k : Nat) => k = k in Nat", "2", "refl Nat 2"),
    ("fun (k : Nat) => Nat -> Nat", "1", "fun (n : Nat) => succ (succ n)"),
    ("fun (k : Nat) => Sum (n : Nat), Nat", "3",
     "pair (Sum (n : Nat), Nat) 1 2"),
]


def test_criterion_2_transport_along_reflexivity(bundled_env):
    env = bundled_env
    checked = 0
    for motive, point, value in TRANSPORT_CASES:
        term = elab(env, f"transportf Nat ({motive}) {point} {point} "
                         f"(refl Nat {point}) ({value})")
        expected = elab(env, value)
        got = deep_call(normalize, env, term)
        want = deep_call(normalize, env, expected)
        assert got == want, f"motive {motive}: {got} != {want}"
        checked += 1
    report(2, checked >= 3, f"{checked} distinct motives")


def test_criterion_3_nat_computation(capsys):
    code1 = cli_main(["normalize", lib("nat_demo.uf"), "plus 2 3"])
    out1 = capsys.readouterr().out
    code2 = cli_main(["normalize", lib("nat_demo.uf"), "mult 3 4"])
    out2 = capsys.readouterr().out
    ok = code1 == 0 and out1 == "5\n" and code2 == 0 and out2 == "12\n"
    with capsys.disabled():
        report(3, ok, f"plus 2 3 -> {out1.strip()}, mult 3 4 -> "
                      f"{out2.strip()}")


def _surface_refs(decl) -> set:
    """Free global identifiers of a declaration, from the surface tree.

    Independent of the kernel's axiom bookkeeping: operates on the
    parsed syntax only.
    """
    refs: set = set()

    def walk(t, scope: tuple) -> None:
        if isinstance(t, SVar):
            if t.name not in scope and t.name not in BUILTIN_NAMES:
                refs.add(t.name)
        elif isinstance(t, SApp):
            walk(t.fn, scope)
            walk(t.arg, scope)
        elif isinstance(t, SArrow):
            walk(t.domain, scope)
            walk(t.codomain, scope)
        elif isinstance(t, SEq):
            walk(t.lhs, scope)
            walk(t.rhs, scope)
            walk(t.type, scope)
        elif isinstance(t, (SLam, SPi)):
            inner = scope
            for b in t.binders:
                walk(b.type, inner)
                inner = inner + (b.name,)
            walk(t.body, inner)
        elif isinstance(t, SSigma):
            walk(t.binder.type, scope)
            walk(t.body, scope + (t.binder.name,))
        elif isinstance(t, (SNum, SType)):
            pass
        else:  # pragma: no cover
            raise AssertionError(f"unexpected surface node {type(t)}")

    scope: tuple = ()
    for b in decl.binders:
        walk(b.type, scope)
        scope = scope + (b.name,)
    walk(decl.result_type, scope)
    if decl.body is not None:
        walk(decl.body, scope)
    return refs


def _reachability_oracle() -> dict:
    """Transitive axiom sets recomputed by graph traversal of the
    parsed corpus."""
    manifest = parse_manifest(bundled_manifest_path())
    order, parsed = resolve_imports(manifest.files())
    refs: dict = {}
    axioms: set = set()
    for path in order:
        for decl in parsed[path].decls:
            refs[decl.name] = _surface_refs(decl)
            if decl.keyword == "axiom":
                axioms.add(decl.name)
    closure: dict = {}
    for name in refs:  # files arrive in dependency order
        reached = set()
        stack = [name]
        seen = set()
        while stack:
            current = stack.pop()
            if current in seen or current not in refs:
                continue
            seen.add(current)
            if current in axioms:
                reached.add(current)
            stack.extend(refs[current])
        closure[name] = frozenset(reached)
    return closure


def test_criterion_4_axiom_hygiene(bundled_env, bundled_report):
    env = bundled_env
    expectations = {
        "idfun": frozenset(),
        "iscontrunit": frozenset(),
        "natdeceq": frozenset(),
        "isasetnat": frozenset(),
        "idisweq": frozenset(),
        "weqtopaths": frozenset({"univalence"}),
    }
    manifest = parse_manifest(bundled_manifest_path())
    tier2_funext = [e.name for e in manifest.entries
                    if e.tier == 2 and e.budget == {"funext"}]
    assert tier2_funext, "expected tier-2 entries budgeted to funext"
    for name in tier2_funext:
        expectations[name] = frozenset({"funext"})
    for name, want in expectations.items():
        got = env.lookup(name).axioms_used
        assert got == want, f"{name}: kernel reports {set(got)}"
    oracle = _reachability_oracle()
    mismatches = [d.name for d in env
                  if oracle[d.name] != d.axioms_used]
    assert not mismatches, f"oracle disagrees on {mismatches}"
    assert audit_budgets(bundled_manifest_path(), env) == []
    report(4, True, f"{len(expectations)} pinned sets, oracle agrees on "
                    f"{len(oracle)} declarations")


def test_criterion_5_hedberg_milestone(bundled_env):
    decl = bundled_env.lookup("isasetnat")
    ok = decl is not None and decl.axioms_used == frozenset()
    report(5, ok, "isasetnat checks with an empty axiom set")


def test_criterion_6_unfolding_identities(bundled_env):
    env = bundled_env
    pairs = [
        ("isofhlevel 0 Nat", "iscontr Nat"),
        ("forall (X : Type 0), isofhlevel 0 X",
         "forall (X : Type 0), iscontr X"),
        ("eqweqmap Nat Nat (refl (Type 0) Nat)", "idweq Nat"),
    ]
    for a, b in pairs:
        assert deep_call(definitionally_equal, env, elab(env, a),
                         elab(env, b)), f"{a} != {b}"
    report(6, True, f"{len(pairs)} identities")


def test_criterion_7_negative_suite():
    assert len(NEGATIVE_FIXTURES) >= 15
    failures = []
    for name, code in NEGATIVE_FIXTURES:
        result = check_files([fixture_path(name)])
        if not result.diagnostics or result.diagnostics[0].code != code:
            failures.append(name)
    report(7, not failures,
           f"{len(NEGATIVE_FIXTURES)} fixtures with designated codes")


def test_criterion_8_preservation(bundled_env):
    env = bundled_env

    def run():
        failures = []
        for decl in env:
            if decl.body is None:
                continue
            nf = normalize(env, decl.body)
            try:
                kernel_check(env, (), nf, decl.type)
            except Exception as exc:  # noqa: BLE001 - report below
                failures.append((decl.name, exc))
        return failures

    failures = deep_call(run)
    report(8, not failures,
           f"{sum(1 for d in env if d.body is not None)} definitions, "
           f"{len(failures)} failures")


def test_criterion_9_idempotence_and_roundtrip(bundled_env):
    env = bundled_env

    def run():
        bad_idem, bad_round = [], []
        for decl in env:
            terms = [decl.type] + ([decl.body] if decl.body is not None
                                   else [])
            for t in terms:
                once = normalize(env, t)
                if normalize(env, once) != once:
                    bad_idem.append(decl.name)
                rendered = render_term(env, t)
                again = elaborate_term(parse_term_text(rendered), [], env)
                if again != t:
                    bad_round.append(decl.name)
        return bad_idem, bad_round

    bad_idem, bad_round = deep_call(run)
    report(9, not bad_idem and not bad_round,
           f"idempotence failures: {bad_idem or 'none'}, "
           f"round-trip failures: {bad_round or 'none'}")
