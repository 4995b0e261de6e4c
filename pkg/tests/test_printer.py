"""Rendering core terms to surface text that re-elaborates exactly."""

import pytest

from ufcheck.elaborate import elaborate_term
from ufcheck.printer import render_term
from ufcheck.surface import parse_term_text
from ufcheck.terms import Nat, Succ, Var, Zero


def roundtrip(env, text: str):
    core = elaborate_term(parse_term_text(text), [], env)
    rendered = render_term(env, core)
    again = elaborate_term(parse_term_text(rendered), [], env)
    assert again == core, f"{text!r} -> {rendered!r} changed meaning"
    return rendered


SAMPLES = [
    "fun (A : Type 0) (x : A) => x",
    "forall (A : Type 0), A -> A",
    "Sum (n : Nat), n = n in Nat",
    "fun (n : Nat) => succ (succ n)",
    "17",
    "pair (Sum (n : Nat), Nat) 1 2",
    "fun (p : Sum (n : Nat), Nat) => pr1 p",
    "fun (A : Type 0) (x : A) (y : A) (p : x = y in A) => "
    "J A x (fun (y0 : A) (p0 : x = y0 in A) => y0 = x in A) (refl A x) y p",
    "fun (m : Nat) => natind (fun (k : Nat) => Nat) m "
    "(fun (k : Nat) (ih : Nat) => succ ih) 3",
    "fun (e : Empty) => emptyind (fun (v : Empty) => Nat) e",
    "fun (u : Unit) => unitind (fun (v : Unit) => Nat) 0 u",
    "fun (c : Coprod Nat Unit) => coprodind (fun (v : Coprod Nat Unit) "
    "=> Nat) (fun (n : Nat) => n) (fun (u : Unit) => 0) c",
    "inl Nat Unit 3",
    "inr Nat Unit star",
    "(fun (x : Nat) => x) 2",
    "Nat -> (Nat -> Nat) -> Type 0",
]


@pytest.mark.parametrize("text", SAMPLES)
def test_roundtrip_samples(text, bundled_env):
    roundtrip(bundled_env, text)


def test_numerals_print_as_decimal(bundled_env):
    assert render_term(bundled_env, Succ(Succ(Succ(Zero())))) == "3"
    assert render_term(bundled_env, Zero()) == "0"


def test_open_numerals_print_with_succ(bundled_env):
    rendered = render_term(bundled_env, Succ(Succ(Var(0))), ctx=(Nat(),),
                           names=["n"])
    assert rendered == "succ (succ n)"


def test_generated_names_avoid_globals(bundled_env):
    rendered = roundtrip(bundled_env, "fun (A : Type 0) => idfun A")
    assert "idfun" in rendered


def test_rendering_free_variables_uses_context_names(bundled_env):
    rendered = render_term(bundled_env, Var(0), ctx=(Nat(),), names=["k"])
    assert rendered == "k"


def test_corpus_constants_render_by_name(bundled_env):
    decl = bundled_env.lookup("weqtopaths")
    rendered = render_term(bundled_env, decl.type)
    assert "weq" in rendered and "Type 0" in rendered
