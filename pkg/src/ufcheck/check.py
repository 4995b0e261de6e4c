"""Syntax-directed bidirectional type checker with axiom tracking.

Synthesis works on fully annotated core terms; checking is conversion
backed, with universe cumulativity applied only when a universe is
checked against a universe.  Every declaration records the transitive
set of axioms it depends on, which is what the `assumptions` query
reports.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import conversion
from .conversion import DEFAULT_MAX_STEPS, StepBudget
from .diagnostics import (Diagnostic, E_DUPLICATE, E_MISMATCH,
                          E_NOT_FUNCTION, E_NOT_PAIR, E_ELIM_SHAPE,
                          E_UNBOUND, E_UNIVERSE, SourceSpan)
from .terms import (App, Context, Coprod, CoprodInd, Const, Empty, EmptyInd,
                    Id, Inl, Inr, J, Lam, Nat, NatInd, Pair, Pi, Pr1, Pr2,
                    Refl, Sigma, Star, Succ, Term, Unit, UnitInd, Universe,
                    Var, Zero, const_names, ctx_extend, ctx_lookup, shift,
                    subst_top, substitute)


@dataclass
class CheckerConfig:
    max_steps: int = DEFAULT_MAX_STEPS
    max_universe: Optional[int] = None  # cap on universe literals


DEFAULT_CONFIG = CheckerConfig()


@dataclass(eq=False)
class Declaration:
    """A checked global definition or axiom.

    Immutable after construction apart from the private evaluation
    cache used by the normalizer.
    """

    name: str
    kind: str  # "definition" | "axiom"
    type: Term
    body: Optional[Term]
    axioms_used: frozenset[str]
    span: Optional[SourceSpan] = None
    _value_cache: object = field(default=None, repr=False, compare=False)

    @property
    def is_axiom(self) -> bool:
        return self.kind == "axiom"


class GlobalEnv:
    """Persistent snapshot of checked declarations, ordered by entry.

    Extension copies the underlying map, so older snapshots stay valid;
    the declarations form a DAG by construction (a body can only refer
    to earlier entries).
    """

    __slots__ = ("_map",)

    def __init__(self, _map: Optional[dict[str, Declaration]] = None):
        self._map = _map if _map is not None else {}

    def lookup(self, name: str) -> Optional[Declaration]:
        return self._map.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._map

    def __iter__(self) -> Iterable[Declaration]:
        return iter(self._map.values())

    def __len__(self) -> int:
        return len(self._map)

    def names(self) -> list[str]:
        return list(self._map.keys())

    def extended(self, decl: Declaration) -> "GlobalEnv":
        new_map = dict(self._map)
        new_map[decl.name] = decl
        return GlobalEnv(new_map)


def _render(env: GlobalEnv, t: Term, ctx: Context) -> str:
    # late import: the printer needs the checker for motive annotations
    from .printer import render_term
    try:
        return render_term(env, t, ctx)
    except Exception:
        return repr(t)


def infer(env: GlobalEnv, ctx: Context, t: Term,
          config: CheckerConfig = DEFAULT_CONFIG,
          budget: Optional[StepBudget] = None) -> Term:
    """Synthesize the unique type of t."""
    if budget is None:
        budget = StepBudget(config.max_steps)

    if isinstance(t, Var):
        if t.index >= len(ctx):
            raise Diagnostic(E_UNBOUND, f"unbound variable #{t.index}")
        return ctx_lookup(ctx, t.index)

    if isinstance(t, Const):
        decl = env.lookup(t.name)
        if decl is None:
            raise Diagnostic(E_UNBOUND, f"unknown constant '{t.name}'")
        return decl.type

    if isinstance(t, Universe):
        if config.max_universe is not None and t.level > config.max_universe:
            raise Diagnostic(
                E_UNIVERSE,
                f"universe level {t.level} exceeds the configured cap "
                f"{config.max_universe}")
        return Universe(t.level + 1)

    if isinstance(t, Pi) or isinstance(t, Sigma):
        a, b = (t.domain, t.codomain) if isinstance(t, Pi) else \
               (t.first, t.second)
        i = infer_universe(env, ctx, a, config, budget)
        j = infer_universe(env, ctx_extend(ctx, a), b, config, budget)
        return Universe(max(i, j))

    if isinstance(t, Lam):
        infer_universe(env, ctx, t.domain, config, budget)
        body_ty = infer(env, ctx_extend(ctx, t.domain), t.body, config,
                        budget)
        return Pi(t.domain, body_ty)

    if isinstance(t, App):
        fn_ty = conversion.normalize(env, infer(env, ctx, t.fn, config,
                                                budget),
                                     len(ctx), budget=budget)
        if not isinstance(fn_ty, Pi):
            raise Diagnostic(
                E_NOT_FUNCTION,
                "application of a non-function "
                f"(head has type {_render(env, fn_ty, ctx)})")
        check(env, ctx, t.arg, fn_ty.domain, config, budget)
        return subst_top(fn_ty.codomain, t.arg)

    if isinstance(t, Pair):
        infer_universe(env, ctx, t.sigma_type, config, budget)
        sigma = conversion.normalize(env, t.sigma_type, len(ctx),
                                     budget=budget)
        if not isinstance(sigma, Sigma):
            raise Diagnostic(
                E_NOT_PAIR,
                "pair annotation is not a Sum type "
                f"({_render(env, sigma, ctx)})")
        check(env, ctx, t.fst, sigma.first, config, budget)
        check(env, ctx, t.snd, subst_top(sigma.second, t.fst), config,
              budget)
        return t.sigma_type

    if isinstance(t, Pr1) or isinstance(t, Pr2):
        pair_ty = conversion.normalize(env, infer(env, ctx, t.pair, config,
                                                  budget),
                                       len(ctx), budget=budget)
        if not isinstance(pair_ty, Sigma):
            raise Diagnostic(
                E_NOT_PAIR,
                "projection from a non-pair "
                f"(argument has type {_render(env, pair_ty, ctx)})")
        if isinstance(t, Pr1):
            return pair_ty.first
        return subst_top(pair_ty.second, Pr1(t.pair))

    if isinstance(t, Id):
        i = infer_universe(env, ctx, t.type, config, budget)
        check(env, ctx, t.lhs, t.type, config, budget)
        check(env, ctx, t.rhs, t.type, config, budget)
        return Universe(i)

    if isinstance(t, Refl):
        infer_universe(env, ctx, t.type, config, budget)
        check(env, ctx, t.point, t.type, config, budget)
        return Id(t.type, t.point, t.point)

    if isinstance(t, J):
        infer_universe(env, ctx, t.type, config, budget)
        check(env, ctx, t.base, t.type, config, budget)
        # motive lives under (endpoint : T, path : base = endpoint)
        motive_ctx = ctx_extend(
            ctx_extend(ctx, t.type),
            Id(shift(t.type, 0, 1), shift(t.base, 0, 1), Var(0)))
        infer_universe(env, motive_ctx, t.motive, config, budget)
        refl_motive = substitute(substitute(t.motive, 1, t.base), 0,
                                 Refl(t.type, t.base))
        check(env, ctx, t.case_refl, refl_motive, config, budget)
        check(env, ctx, t.endpoint, t.type, config, budget)
        check(env, ctx, t.path, Id(t.type, t.base, t.endpoint), config,
              budget)
        return substitute(substitute(t.motive, 1, t.endpoint), 0, t.path)

    if isinstance(t, Nat) or isinstance(t, Empty) or isinstance(t, Unit):
        return Universe(0)

    if isinstance(t, Zero):
        return Nat()

    if isinstance(t, Succ):
        check(env, ctx, t.n, Nat(), config, budget)
        return Nat()

    if isinstance(t, NatInd):
        motive_ctx = ctx_extend(ctx, Nat())
        infer_universe(env, motive_ctx, t.motive, config, budget)
        check(env, ctx, t.case_zero, subst_top(t.motive, Zero()), config,
              budget)
        # successor case binds (m : Nat, ih : motive m)
        succ_ctx = ctx_extend(ctx_extend(ctx, Nat()), t.motive)
        succ_motive = substitute(shift(t.motive, 1, 2), 0, Succ(Var(1)))
        check(env, succ_ctx, t.case_succ, succ_motive, config, budget)
        check(env, ctx, t.scrutinee, Nat(), config, budget)
        return subst_top(t.motive, t.scrutinee)

    if isinstance(t, EmptyInd):
        motive_ctx = ctx_extend(ctx, Empty())
        infer_universe(env, motive_ctx, t.motive, config, budget)
        check(env, ctx, t.scrutinee, Empty(), config, budget)
        return subst_top(t.motive, t.scrutinee)

    if isinstance(t, Star):
        return Unit()

    if isinstance(t, UnitInd):
        motive_ctx = ctx_extend(ctx, Unit())
        infer_universe(env, motive_ctx, t.motive, config, budget)
        check(env, ctx, t.case_star, subst_top(t.motive, Star()), config,
              budget)
        check(env, ctx, t.scrutinee, Unit(), config, budget)
        return subst_top(t.motive, t.scrutinee)

    if isinstance(t, Coprod):
        i = infer_universe(env, ctx, t.left, config, budget)
        j = infer_universe(env, ctx, t.right, config, budget)
        return Universe(max(i, j))

    if isinstance(t, Inl) or isinstance(t, Inr):
        infer_universe(env, ctx, t.coprod_type, config, budget)
        cop = conversion.normalize(env, t.coprod_type, len(ctx),
                                   budget=budget)
        if not isinstance(cop, Coprod):
            raise Diagnostic(
                E_ELIM_SHAPE,
                "injection annotation is not a coproduct type "
                f"({_render(env, cop, ctx)})")
        side = cop.left if isinstance(t, Inl) else cop.right
        check(env, ctx, t.value, side, config, budget)
        return t.coprod_type

    if isinstance(t, CoprodInd):
        scrut_ty = conversion.normalize(env, infer(env, ctx, t.scrutinee,
                                                   config, budget),
                                        len(ctx), budget=budget)
        if not isinstance(scrut_ty, Coprod):
            raise Diagnostic(
                E_ELIM_SHAPE,
                "coprodind scrutinee is not a coproduct "
                f"(has type {_render(env, scrut_ty, ctx)})")
        motive_ctx = ctx_extend(ctx, scrut_ty)
        infer_universe(env, motive_ctx, t.motive, config, budget)
        lifted = shift(scrut_ty, 0, 1)
        left_goal = substitute(shift(t.motive, 1, 1), 0,
                               Inl(lifted, Var(0)))
        check(env, ctx_extend(ctx, scrut_ty.left), t.case_left, left_goal,
              config, budget)
        right_goal = substitute(shift(t.motive, 1, 1), 0,
                                Inr(lifted, Var(0)))
        check(env, ctx_extend(ctx, scrut_ty.right), t.case_right, right_goal,
              config, budget)
        return subst_top(t.motive, t.scrutinee)

    raise Diagnostic(E_MISMATCH, f"cannot infer type of {type(t).__name__}")


def infer_universe(env: GlobalEnv, ctx: Context, t: Term,
                   config: CheckerConfig = DEFAULT_CONFIG,
                   budget: Optional[StepBudget] = None) -> int:
    """Level of the universe t inhabits; E003 if t is not a type."""
    if budget is None:
        budget = StepBudget(config.max_steps)
    ty = conversion.normalize(env, infer(env, ctx, t, config, budget),
                              len(ctx), budget=budget)
    if not isinstance(ty, Universe):
        raise Diagnostic(
            E_UNIVERSE,
            f"expected a type, found an element of {_render(env, ty, ctx)}")
    return ty.level


def check(env: GlobalEnv, ctx: Context, t: Term, expected: Term,
          config: CheckerConfig = DEFAULT_CONFIG,
          budget: Optional[StepBudget] = None) -> None:
    """Check t against an expected type; raises a Diagnostic on failure."""
    if budget is None:
        budget = StepBudget(config.max_steps)
    actual = infer(env, ctx, t, config, budget)
    if actual == expected:
        return
    actual_nf = conversion.normalize(env, actual, len(ctx), budget=budget)
    expected_nf = conversion.normalize(env, expected, len(ctx),
                                       budget=budget)
    if isinstance(actual_nf, Universe) and isinstance(expected_nf, Universe):
        # cumulativity, applied only universe against universe
        if actual_nf.level <= expected_nf.level:
            return
        raise Diagnostic(
            E_UNIVERSE,
            f"universe level {actual_nf.level} does not fit inside "
            f"Type {expected_nf.level}",
            expected=expected_nf, actual=actual_nf)
    if actual_nf == expected_nf:
        return
    raise Diagnostic(
        E_MISMATCH,
        f"type mismatch: expected {_render(env, expected_nf, ctx)}, "
        f"got {_render(env, actual_nf, ctx)}",
        expected=expected_nf, actual=actual_nf)


def _collect_axioms(env: GlobalEnv, terms: Iterable[Term],
                    self_name: Optional[str] = None) -> frozenset[str]:
    used: set[str] = set()
    for t in terms:
        for name in const_names(t):
            decl = env.lookup(name)
            if decl is not None:
                used |= decl.axioms_used
    if self_name is not None:
        used.add(self_name)
    return frozenset(used)


def add_decl(env: GlobalEnv, name: str, kind: str, type_term: Term,
             body: Optional[Term], span: Optional[SourceSpan] = None,
             config: CheckerConfig = DEFAULT_CONFIG) -> GlobalEnv:
    """Check a declaration and return the extended environment."""
    if name in env:
        raise Diagnostic(E_DUPLICATE, f"duplicate name '{name}'", span=span)
    budget = StepBudget(config.max_steps)
    infer_universe(env, (), type_term, config, budget)
    if kind == "definition":
        if body is None:
            raise Diagnostic(E_ELIM_SHAPE, f"definition '{name}' has no body",
                             span=span)
        check(env, (), body, type_term, config, budget)
        axioms = _collect_axioms(env, (type_term, body))
    elif kind == "axiom":
        if body is not None:
            raise Diagnostic(E_ELIM_SHAPE, f"axiom '{name}' cannot have a "
                             "body", span=span)
        axioms = _collect_axioms(env, (type_term,), self_name=name)
    else:
        raise ValueError(f"unknown declaration kind {kind!r}")
    decl = Declaration(name=name, kind=kind, type=type_term, body=body,
                       axioms_used=axioms, span=span)
    return env.extended(decl)


def assumptions(env: GlobalEnv, name: str) -> frozenset[str]:
    """Transitive axiom set a declaration depends on."""
    decl = env.lookup(name)
    if decl is None:
        raise Diagnostic(E_UNBOUND, f"unknown declaration '{name}'")
    return decl.axioms_used


@dataclass
class CheckTiming:
    name: str
    seconds: float


def add_decl_timed(env: GlobalEnv, name: str, kind: str, type_term: Term,
                   body: Optional[Term], span: Optional[SourceSpan] = None,
                   config: CheckerConfig = DEFAULT_CONFIG
                   ) -> tuple[GlobalEnv, CheckTiming]:
    start = time.perf_counter()
    new_env = add_decl(env, name, kind, type_term, body, span, config)
    return new_env, CheckTiming(name, time.perf_counter() - start)
