"""Elaboration from named surface syntax to de Bruijn core terms.

Name resolution: innermost binder first, then the built-in constants,
then the global environment.  Built-ins that construct annotated core
nodes have a fixed minimum arity, checked here (E006); extra arguments
become ordinary applications.  Eliminator motives and cases accept any
term; a literal `fun` is beta-contracted into the binding positions so
that printing and re-elaborating is exact.
"""

from __future__ import annotations

from typing import Callable, Optional

from .check import GlobalEnv
from .diagnostics import Diagnostic, E_ELIM_SHAPE, E_UNBOUND, SourceSpan
from .surface import (SApp, SArrow, SBinder, SEq, SLam, SNum, SPi, SSigma,
                      SType, STerm, SVar, SurfaceDecl)
from .terms import (App, Coprod, CoprodInd, Const, Empty, EmptyInd, Id, Inl,
                    Inr, J, Lam, Nat, NatInd, Pair, Pi, Pr1, Pr2, Refl,
                    Sigma, Star, Succ, Term, Unit, UnitInd, Universe, Var,
                    Zero, open_binders)

# name -> (arity, builder over elaborated argument terms)
_BUILTIN_APPS: dict[str, tuple[int, Callable[..., Term]]] = {
    "succ": (1, Succ),
    "Coprod": (2, Coprod),
    "inl": (3, lambda a, b, v: Inl(Coprod(a, b), v)),
    "inr": (3, lambda a, b, v: Inr(Coprod(a, b), v)),
    "Id": (3, Id),
    "refl": (2, Refl),
    "pair": (3, Pair),
    "pr1": (1, Pr1),
    "pr2": (1, Pr2),
    "J": (6, lambda ty, base, motive, cr, e, p:
          J(ty, base, open_binders(motive, 2), cr, e, p)),
    "natind": (4, lambda p, z, s, n:
               NatInd(open_binders(p, 1), z, open_binders(s, 2), n)),
    "emptyind": (2, lambda p, e: EmptyInd(open_binders(p, 1), e)),
    "unitind": (3, lambda p, c, u: UnitInd(open_binders(p, 1), c, u)),
    "coprodind": (4, lambda p, l, r, s:
                  CoprodInd(open_binders(p, 1), open_binders(l, 1),
                            open_binders(r, 1), s)),
}

_BUILTIN_ATOMS: dict[str, Callable[[], Term]] = {
    "Nat": Nat,
    "Empty": Empty,
    "Unit": Unit,
    "zero": Zero,
    "star": Star,
}

BUILTIN_NAMES = frozenset(_BUILTIN_APPS) | frozenset(_BUILTIN_ATOMS)


def _num_term(value: int) -> Term:
    t: Term = Zero()
    for _ in range(value):
        t = Succ(t)
    return t


def _resolve_name(name: str, scope: list[str], env: GlobalEnv,
                  span: SourceSpan) -> Term:
    for i in range(len(scope) - 1, -1, -1):
        if scope[i] == name:
            return Var(len(scope) - 1 - i)
    if name in _BUILTIN_ATOMS:
        return _BUILTIN_ATOMS[name]()
    if name == "succ":
        # bare successor is a plain function on Nat
        return Lam(Nat(), Succ(Var(0)))
    if name in _BUILTIN_APPS:
        arity = _BUILTIN_APPS[name][0]
        raise Diagnostic(E_ELIM_SHAPE,
                         f"'{name}' expects {arity} argument(s)", span=span)
    if name in env:
        return Const(name)
    raise Diagnostic(E_UNBOUND, f"unbound identifier '{name}'", span=span)


def _spine(t: STerm) -> tuple[STerm, list[STerm]]:
    args: list[STerm] = []
    while isinstance(t, SApp):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def elaborate_term(s: STerm, scope: list[str], env: GlobalEnv) -> Term:
    if isinstance(s, SVar):
        return _resolve_name(s.name, scope, env, s.span)
    if isinstance(s, SNum):
        return _num_term(s.value)
    if isinstance(s, SType):
        return Universe(s.level)
    if isinstance(s, SApp):
        head, args = _spine(s)
        if isinstance(head, SVar) and head.name not in scope \
                and head.name in _BUILTIN_APPS:
            arity, build = _BUILTIN_APPS[head.name]
            if len(args) < arity:
                raise Diagnostic(
                    E_ELIM_SHAPE,
                    f"'{head.name}' expects {arity} argument(s), "
                    f"got {len(args)}", span=head.span)
            core_args = [elaborate_term(a, scope, env) for a in args]
            result = build(*core_args[:arity])
            for extra in core_args[arity:]:
                result = App(result, extra)
            return result
        fn = elaborate_term(head, scope, env)
        for a in args:
            fn = App(fn, elaborate_term(a, scope, env))
        return fn
    if isinstance(s, SArrow):
        dom = elaborate_term(s.domain, scope, env)
        scope.append("")  # anonymous binder
        try:
            cod = elaborate_term(s.codomain, scope, env)
        finally:
            scope.pop()
        return Pi(dom, cod)
    if isinstance(s, SEq):
        return Id(elaborate_term(s.type, scope, env),
                  elaborate_term(s.lhs, scope, env),
                  elaborate_term(s.rhs, scope, env))
    if isinstance(s, SLam) or isinstance(s, SPi):
        binders = s.binders
        doms = []
        for b in binders:
            doms.append(elaborate_term(b.type, scope, env))
            scope.append(b.name)
        try:
            body = elaborate_term(s.body, scope, env)
        finally:
            del scope[len(scope) - len(binders):]
        ctor = Lam if isinstance(s, SLam) else Pi
        for dom in reversed(doms):
            body = ctor(dom, body)
        return body
    if isinstance(s, SSigma):
        first = elaborate_term(s.binder.type, scope, env)
        scope.append(s.binder.name)
        try:
            second = elaborate_term(s.body, scope, env)
        finally:
            scope.pop()
        return Sigma(first, second)
    raise Diagnostic(E_ELIM_SHAPE, f"cannot elaborate {type(s).__name__}")


def elaborate_decl(decl: SurfaceDecl, env: GlobalEnv
                   ) -> tuple[str, str, Term, Optional[Term]]:
    """Elaborate a surface declaration to (name, kind, type, body).

    The binder telescope curries into nested Pi (type) and Lam (body).
    """
    scope: list[str] = []
    doms = []
    for b in decl.binders:
        doms.append(elaborate_term(b.type, scope, env))
        scope.append(b.name)
    result_type = elaborate_term(decl.result_type, scope, env)
    body = None
    if decl.body is not None:
        body = elaborate_term(decl.body, scope, env)
        for dom in reversed(doms):
            body = Lam(dom, body)
    type_term = result_type
    for dom in reversed(doms):
        type_term = Pi(dom, type_term)
    kind = "definition" if decl.keyword == "def" else "axiom"
    return decl.name, kind, type_term, body
