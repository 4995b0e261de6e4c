"""Nameless core syntax: de Bruijn terms, shifting, substitution.

Binding discipline: a field marked "binds n" below is a term whose de
Bruijn indices 0..n-1 refer to the binders introduced by the enclosing
node (index 0 is the innermost).  All binders carry full type
annotations so that type synthesis stays syntax-directed.
"""

from __future__ import annotations

from dataclasses import dataclass


class KernelError(Exception):
    """Internal invariant violation (a defect, never a user error)."""


@dataclass(frozen=True, slots=True)
class Term:
    pass


@dataclass(frozen=True, slots=True)
class Var(Term):
    index: int


@dataclass(frozen=True, slots=True)
class Universe(Term):
    level: int  # 0-based; the kernel imposes no upper bound


@dataclass(frozen=True, slots=True)
class Pi(Term):
    domain: Term
    codomain: Term  # binds 1


@dataclass(frozen=True, slots=True)
class Lam(Term):
    domain: Term
    body: Term  # binds 1


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Sigma(Term):
    first: Term
    second: Term  # binds 1


@dataclass(frozen=True, slots=True)
class Pair(Term):
    sigma_type: Term
    fst: Term
    snd: Term


@dataclass(frozen=True, slots=True)
class Pr1(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class Pr2(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class Id(Term):
    type: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class Refl(Term):
    type: Term
    point: Term


@dataclass(frozen=True, slots=True)
class J(Term):
    """Based path induction.

    The motive binds two variables: index 1 is the endpoint, index 0
    the path from the base to it.
    """

    type: Term
    base: Term
    motive: Term  # binds 2 (endpoint, path)
    case_refl: Term
    endpoint: Term
    path: Term


@dataclass(frozen=True, slots=True)
class Nat(Term):
    pass


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Succ(Term):
    n: Term


@dataclass(frozen=True, slots=True)
class NatInd(Term):
    motive: Term  # binds 1
    case_zero: Term
    case_succ: Term  # binds 2 (predecessor, inductive hypothesis)
    scrutinee: Term


@dataclass(frozen=True, slots=True)
class Empty(Term):
    pass


@dataclass(frozen=True, slots=True)
class EmptyInd(Term):
    motive: Term  # binds 1
    scrutinee: Term


@dataclass(frozen=True, slots=True)
class Unit(Term):
    pass


@dataclass(frozen=True, slots=True)
class Star(Term):
    pass


@dataclass(frozen=True, slots=True)
class UnitInd(Term):
    motive: Term  # binds 1
    case_star: Term
    scrutinee: Term


@dataclass(frozen=True, slots=True)
class Coprod(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Inl(Term):
    coprod_type: Term
    value: Term


@dataclass(frozen=True, slots=True)
class Inr(Term):
    coprod_type: Term
    value: Term


@dataclass(frozen=True, slots=True)
class CoprodInd(Term):
    motive: Term  # binds 1
    case_left: Term  # binds 1
    case_right: Term  # binds 1
    scrutinee: Term


@dataclass(frozen=True, slots=True)
class Const(Term):
    name: str


# Subterm layout: (field, binders introduced above that field), in
# constructor order.  Leaves (Var, Universe, Const, Nat, ...) are
# handled separately by the traversals.
_SUBTERMS: dict[type, tuple[tuple[str, int], ...]] = {
    Pi: (("domain", 0), ("codomain", 1)),
    Lam: (("domain", 0), ("body", 1)),
    App: (("fn", 0), ("arg", 0)),
    Sigma: (("first", 0), ("second", 1)),
    Pair: (("sigma_type", 0), ("fst", 0), ("snd", 0)),
    Pr1: (("pair", 0),),
    Pr2: (("pair", 0),),
    Id: (("type", 0), ("lhs", 0), ("rhs", 0)),
    Refl: (("type", 0), ("point", 0)),
    J: (("type", 0), ("base", 0), ("motive", 2), ("case_refl", 0),
        ("endpoint", 0), ("path", 0)),
    Succ: (("n", 0),),
    NatInd: (("motive", 1), ("case_zero", 0), ("case_succ", 2),
             ("scrutinee", 0)),
    EmptyInd: (("motive", 1), ("scrutinee", 0)),
    UnitInd: (("motive", 1), ("case_star", 0), ("scrutinee", 0)),
    Coprod: (("left", 0), ("right", 0)),
    Inl: (("coprod_type", 0), ("value", 0)),
    Inr: (("coprod_type", 0), ("value", 0)),
    CoprodInd: (("motive", 1), ("case_left", 1), ("case_right", 1),
                ("scrutinee", 0)),
}

_LEAVES = (Universe, Const, Nat, Zero, Empty, Unit, Star)


def _map_vars(t: Term, depth: int, on_var) -> Term:
    """Rebuild t, applying on_var(index, depth) to every variable.

    depth counts binders passed on the way down.  Shares unchanged
    subtrees.
    """
    if isinstance(t, Var):
        return on_var(t.index, depth)
    if isinstance(t, _LEAVES):
        return t
    spec = _SUBTERMS[type(t)]
    changed = False
    parts = []
    for field, binders in spec:
        old = getattr(t, field)
        new = _map_vars(old, depth + binders, on_var)
        if new is not old:
            changed = True
        parts.append(new)
    return type(t)(*parts) if changed else t


def shift(t: Term, cutoff: int, amount: int) -> Term:
    """Displace every free variable with index >= cutoff by amount.

    A negative amount is only legal when no index in range would drop
    below zero; underflow raises KernelError.
    """
    if amount == 0:
        return t

    def on_var(k: int, depth: int) -> Term:
        if k >= cutoff + depth:
            if k + amount < depth:
                raise KernelError(f"shift underflow: index {k} by {amount}")
            return Var(k + amount)
        return _var_cache_get(k)

    return _map_vars(t, 0, on_var)


# Small Var cache: indices are overwhelmingly tiny.
_VAR_CACHE = tuple(Var(i) for i in range(64))


def _var_cache_get(k: int) -> Var:
    return _VAR_CACHE[k] if k < 64 else Var(k)


def substitute(t: Term, target: int, u: Term) -> Term:
    """Capture-avoiding substitution of u for Var(target).

    u must be well scoped in the context of the target index (the
    context outside the binder being eliminated).  Free variables above
    the target are decremented.
    """

    def on_var(k: int, depth: int) -> Term:
        j = target + depth
        if k == j:
            return shift(u, 0, j)
        if k > j:
            return _var_cache_get(k - 1)
        return _var_cache_get(k)

    return _map_vars(t, 0, on_var)


def subst_top(body: Term, value: Term) -> Term:
    """Instantiate a 1-binder body with a value from the enclosing context."""
    return substitute(body, 0, value)


def occurs_free(t: Term, index: int) -> bool:
    """True if Var(index) occurs free in t."""
    stack = [(t, 0)]
    while stack:
        s, depth = stack.pop()
        if isinstance(s, Var):
            if s.index == index + depth:
                return True
        elif isinstance(s, _LEAVES):
            continue
        else:
            for field, binders in _SUBTERMS[type(s)]:
                stack.append((getattr(s, field), depth + binders))
    return False


def const_names(t: Term) -> set[str]:
    """All global constants referenced by t."""
    names: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Const):
            names.add(s.name)
        elif isinstance(s, (Var, *_LEAVES)):
            continue
        else:
            for field, _ in _SUBTERMS[type(s)]:
                stack.append(getattr(s, field))
    return names


def alpha_equal(t: Term, u: Term) -> bool:
    """Alpha equivalence; syntactic identity in nameless form."""
    return t == u


def open_binders(t: Term, n: int) -> Term:
    """Turn a function term into a term binding n variables.

    Builds (shift(t,0,n)) Var(n-1) ... Var(0) and contracts the
    administrative redexes when t is a literal lambda, so elaborated
    eliminator arguments round-trip exactly.
    """
    result = shift(t, 0, n)
    for i in range(n - 1, -1, -1):
        if isinstance(result, Lam):
            result = subst_top(result.body, Var(i))
        else:
            result = App(result, Var(i))
    return result


# Contexts are plain tuples of types, innermost binding last.
Context = tuple


def ctx_extend(ctx: Context, ty: Term) -> Context:
    return ctx + (ty,)


def ctx_lookup(ctx: Context, index: int) -> Term:
    """Type of Var(index), shifted into the full context."""
    if index < 0 or index >= len(ctx):
        raise KernelError(f"variable {index} out of scope in context of "
                          f"length {len(ctx)}")
    return shift(ctx[-1 - index], 0, index + 1)
