"""Shifting, substitution and alpha equality on the nameless core."""

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from ufcheck.terms import (App, Coprod, Id, KernelError, Lam, Nat, Pair, Pi,
                           Pr1, Pr2, Refl, Sigma, Star, Succ, Unit, Universe,
                           Var, Zero, alpha_equal, occurs_free, open_binders,
                           shift, substitute)


def test_shift_free_variable():
    assert shift(Var(0), 0, 1) == Var(1)


def test_shift_bound_variable_untouched():
    assert shift(Lam(Nat(), Var(0)), 0, 1) == Lam(Nat(), Var(0))


def test_shift_cutoff_passes_under_binder():
    assert shift(Lam(Nat(), Var(1)), 0, 2) == Lam(Nat(), Var(3))


def test_shift_underflow_is_a_defect():
    with pytest.raises(KernelError):
        shift(Var(0), 0, -1)


def test_substitute_at_top():
    assert substitute(Var(0), 0, Zero()) == Zero()


def test_substitute_inside_constructor():
    assert substitute(Succ(Var(0)), 0, Zero()) == Succ(Zero())


def test_substitute_shifts_under_binder():
    assert substitute(Lam(Nat(), Var(1)), 0, Zero()) == Lam(Nat(), Zero())


def test_substitute_above_target_decrements():
    assert substitute(Var(3), 1, Zero()) == Var(2)


def test_alpha_equal_examples():
    assert alpha_equal(Lam(Nat(), Var(0)), Lam(Nat(), Var(0)))
    assert not alpha_equal(Zero(), Succ(Zero()))
    assert not alpha_equal(Universe(0), Universe(1))


def test_occurs_free():
    assert occurs_free(Var(0), 0)
    assert not occurs_free(Lam(Nat(), Var(0)), 0)
    assert occurs_free(Lam(Nat(), Var(1)), 0)


def test_open_binders_beta_contracts_literal_lambdas():
    lam = Lam(Nat(), Lam(Nat(), App(Var(1), Var(0))))
    assert open_binders(lam, 2) == App(Var(1), Var(0))


def test_open_binders_applies_opaque_heads():
    assert open_binders(Var(0), 2) == App(App(Var(2), Var(1)), Var(0))


def _terms(ctx_len: int, depth: int):
    leaves = [
        st.just(Nat()), st.just(Zero()), st.just(Unit()), st.just(Star()),
        st.builds(Universe, st.integers(0, 2)),
    ]
    if ctx_len > 0:
        leaves.append(st.builds(Var, st.integers(0, ctx_len - 1)))
    leaf = st.one_of(leaves)
    if depth <= 0:
        return leaf
    sub = _terms(ctx_len, depth - 1)
    under = _terms(ctx_len + 1, depth - 1)
    return st.one_of(
        leaf,
        st.builds(Succ, sub),
        st.builds(App, sub, sub),
        st.builds(Lam, sub, under),
        st.builds(Pi, sub, under),
        st.builds(Sigma, sub, under),
        st.builds(Pair, sub, sub, sub),
        st.builds(Id, sub, sub, sub),
        st.builds(Refl, sub, sub),
        st.builds(Pr1, sub),
        st.builds(Pr2, sub),
        st.builds(Coprod, sub, sub),
    )


WELL_SCOPED = _terms(ctx_len=2, depth=3)


@given(t=WELL_SCOPED, c=st.integers(0, 3))
def test_shift_by_zero_is_identity(t, c):
    assert shift(t, c, 0) == t


@given(t=WELL_SCOPED, u=WELL_SCOPED)
def test_substitute_into_shifted_is_identity(t, u):
    assert substitute(shift(t, 0, 1), 0, u) == t


@settings(max_examples=60)
@given(t=WELL_SCOPED, c=st.integers(0, 2), a=st.integers(0, 3),
       b=st.integers(0, 3))
def test_shift_composes_additively(t, c, a, b):
    assert shift(shift(t, c, a), c, b) == shift(t, c, a + b)


@given(t=WELL_SCOPED, u=WELL_SCOPED)
def test_alpha_equal_is_reflexive_and_total(t, u):
    assert alpha_equal(t, t)
    result = alpha_equal(t, u)
    assert isinstance(result, bool)
    assert result == alpha_equal(u, t)
