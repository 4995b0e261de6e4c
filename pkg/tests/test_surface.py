"""Parser, elaborator, import resolution, and the negative suite."""

import os

import pytest

from ufcheck.check import GlobalEnv
from ufcheck.diagnostics import Diagnostic
from ufcheck.elaborate import elaborate_term
from ufcheck.pipeline import check_files
from ufcheck.surface import parse_file, parse_term_text, resolve_imports
from ufcheck.terms import (Lam, Pi, Succ, Universe, Var, Zero)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def test_parse_def_with_binders():
    pf = parse_file("def idfun (A : Type 0) (x : A) : A := x", "t.uf")
    assert len(pf.decls) == 1
    decl = pf.decls[0]
    assert decl.keyword == "def"
    assert decl.name == "idfun"
    assert len(decl.binders) == 2


def test_parse_axiom_shape():
    text = ("axiom univalence : forall (A : Type 0) (B : Type 0), "
            "isweq (Type 0) (Type 0) (fun (x : Type 0) => x)")
    pf = parse_file(text, "t.uf")
    assert pf.decls[0].keyword == "axiom"
    assert pf.decls[0].body is None


def test_parse_error_has_span():
    with pytest.raises(Diagnostic) as exc_info:
        parse_file("def f : A := (", "broken.uf")
    diag = exc_info.value
    assert diag.code == "E009"
    assert diag.span is not None
    assert diag.span.file == "broken.uf"
    assert diag.span.line >= 1


def test_parsing_is_total_on_junk():
    for junk in ("???", "def", "def f", 'import', "7", "((("):
        with pytest.raises(Diagnostic) as exc_info:
            parse_file(junk, "junk.uf")
        assert exc_info.value.code == "E009"


def test_elaborate_idfun():
    env = GlobalEnv()
    t = elaborate_term(
        parse_term_text("fun (A : Type 0) (x : A) => x"), [], env)
    assert t == Lam(Universe(0), Lam(Var(0), Var(0)))


def test_elaborate_literal():
    env = GlobalEnv()
    assert elaborate_term(parse_term_text("3"), [], env) == \
        Succ(Succ(Succ(Zero())))


def test_elaborate_unbound_is_e001():
    with pytest.raises(Diagnostic) as exc_info:
        elaborate_term(parse_term_text("foo"), [], GlobalEnv())
    assert exc_info.value.code == "E001"


def test_arrow_is_non_dependent_pi():
    env = GlobalEnv()
    t = elaborate_term(parse_term_text("Nat -> Nat -> Type 0"), [], env)
    assert isinstance(t, Pi) and isinstance(t.codomain, Pi)


def test_binder_shadowing_is_innermost_first():
    env = GlobalEnv()
    t = elaborate_term(
        parse_term_text("fun (x : Nat) (x : Nat) => x"), [], env)
    assert t == Lam(Universe(0), Lam(Universe(0), Var(0))) or \
        t == Lam(Var(0), Lam(Var(0), Var(0))) or \
        t.body.body == Var(0)


def test_unicode_aliases():
    env = GlobalEnv()
    ascii_t = elaborate_term(
        parse_term_text("forall (A : Type 0), A -> A"), [], env)
    uni_t = elaborate_term(
        parse_term_text("∏ (A : Type 0), A -> A"), [], env)
    assert ascii_t == uni_t
    lam_a = elaborate_term(parse_term_text("fun (n : Nat) => n"), [], env)
    lam_u = elaborate_term(parse_term_text("λ (n : Nat) => n"), [], env)
    assert lam_a == lam_u


def test_import_chain_topological(tmp_path):
    (tmp_path / "c.uf").write_text("def c0 : Nat := 0\n")
    (tmp_path / "b.uf").write_text('import "c.uf"\ndef b0 : Nat := c0\n')
    (tmp_path / "a.uf").write_text('import "b.uf"\ndef a0 : Nat := b0\n')
    order, _ = resolve_imports(str(tmp_path / "a.uf"))
    names = [os.path.basename(p) for p in order]
    assert names == ["c.uf", "b.uf", "a.uf"]


def test_import_diamond_processes_once(tmp_path):
    (tmp_path / "d.uf").write_text("def d0 : Nat := 0\n")
    (tmp_path / "b.uf").write_text('import "d.uf"\ndef b0 : Nat := d0\n')
    (tmp_path / "c.uf").write_text('import "d.uf"\ndef c0 : Nat := d0\n')
    (tmp_path / "a.uf").write_text(
        'import "b.uf"\nimport "c.uf"\ndef a0 : Nat := b0\n')
    order, _ = resolve_imports(str(tmp_path / "a.uf"))
    names = [os.path.basename(p) for p in order]
    assert names.count("d.uf") == 1
    assert names.index("d.uf") < names.index("b.uf")
    assert names.index("d.uf") < names.index("c.uf")
    assert names[-1] == "a.uf"
    result = check_files([str(tmp_path / "a.uf")])
    assert result.ok and result.n_definitions == 4


def test_import_cycle_is_e010():
    with pytest.raises(Diagnostic) as exc_info:
        resolve_imports(fixture_path("e010_cycle_a.uf"))
    diag = exc_info.value
    assert diag.code == "E010"
    assert "cycle" in diag.message


def test_self_import_is_e010():
    with pytest.raises(Diagnostic) as exc_info:
        resolve_imports(fixture_path("e010_self_import.uf"))
    assert exc_info.value.code == "E010"


NEGATIVE_FIXTURES = [
    ("e003_type_in_type.uf", "E003"),
    ("e004_apply_zero.uf", "E004"),
    ("e006_j_arity.uf", "E006"),
    ("e001_unbound.uf", "E001"),
    ("e010_cycle_a.uf", "E010"),
    ("e010_self_import.uf", "E010"),
    ("e002_mismatch.uf", "E002"),
    ("e005_pr1_zero.uf", "E005"),
    ("e005_pr2_star.uf", "E005"),
    ("e005_pair_not_sum.uf", "E005"),
    ("e007_duplicate.uf", "E007"),
    ("e009_dangling_paren.uf", "E009"),
    ("e009_unterminated_string.uf", "E009"),
    ("e003_lam_domain_not_a_type.uf", "E003"),
    ("e002_j_wrong_refl_case.uf", "E002"),
    ("e004_apply_path.uf", "E004"),
    ("e006_natind_arity.uf", "E006"),
    ("e001_unbound_in_type.uf", "E001"),
    ("e002_wrong_motive_result.uf", "E002"),
]


@pytest.mark.parametrize("name,code", NEGATIVE_FIXTURES)
def test_negative_fixture(name, code):
    result = check_files([fixture_path(name)])
    assert result.diagnostics, f"{name} unexpectedly checked"
    assert result.diagnostics[0].code == code
    span = result.diagnostics[0].span
    assert span is not None and os.path.basename(span.file) == name \
        or code == "E010"
