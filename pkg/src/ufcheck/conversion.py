"""Normalization and definitional equality (beta, iota, delta, eta).

Strategy: an environment machine in normalization-by-evaluation style.
Terms are evaluated to semantic values (closures defer work under
binders); values are read back to terms, applying eta for Pi and
surjective pairing for Sigma at readback.  Definitions unfold eagerly;
axioms stay as stable neutral heads.

Every beta/iota/delta step spends one unit of the reduction budget, so
a runaway reduction surfaces as StepLimitExceeded instead of a hang.
"""

from __future__ import annotations

from .diagnostics import StepLimitExceeded
from .terms import (App, Coprod, CoprodInd, Const, Empty, EmptyInd, Id, Inl,
                    Inr, J, KernelError, Lam, Nat, NatInd, Pair, Pi, Pr1, Pr2,
                    Refl, Sigma, Star, Succ, Term, Unit, UnitInd, Universe,
                    Var, Zero, occurs_free, shift)

DEFAULT_MAX_STEPS = 10_000_000


class StepBudget:
    __slots__ = ("remaining", "limit")

    def __init__(self, limit: int = DEFAULT_MAX_STEPS):
        self.remaining = limit
        self.limit = limit

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise StepLimitExceeded(self.limit)


class Value:
    __slots__ = ()


class Closure:
    """A term body suspended in its value environment."""

    __slots__ = ("genv", "venv", "body")

    def __init__(self, genv, venv: tuple, body: Term):
        self.genv = genv
        self.venv = venv
        self.body = body

    def apply(self, budget: StepBudget, *args: Value) -> Value:
        return eval_term(self.genv, budget, self.venv + args, self.body)


class VUniverse(Value):
    __slots__ = ("level",)

    def __init__(self, level: int):
        self.level = level


class VPi(Value):
    __slots__ = ("domain", "codomain")

    def __init__(self, domain: Value, codomain: Closure):
        self.domain = domain
        self.codomain = codomain


class VLam(Value):
    __slots__ = ("domain", "body")

    def __init__(self, domain: Value, body: Closure):
        self.domain = domain
        self.body = body


class VSigma(Value):
    __slots__ = ("first", "second")

    def __init__(self, first: Value, second: Closure):
        self.first = first
        self.second = second


class VPair(Value):
    __slots__ = ("sigma_type", "fst", "snd")

    def __init__(self, sigma_type: Value, fst: Value, snd: Value):
        self.sigma_type = sigma_type
        self.fst = fst
        self.snd = snd


class VId(Value):
    __slots__ = ("type", "lhs", "rhs")

    def __init__(self, type: Value, lhs: Value, rhs: Value):
        self.type = type
        self.lhs = lhs
        self.rhs = rhs


class VRefl(Value):
    __slots__ = ("type", "point")

    def __init__(self, type: Value, point: Value):
        self.type = type
        self.point = point


class _VAtom(Value):
    __slots__ = ()


class VNat(_VAtom):
    __slots__ = ()


class VZero(_VAtom):
    __slots__ = ()


class VEmpty(_VAtom):
    __slots__ = ()


class VUnit(_VAtom):
    __slots__ = ()


class VStar(_VAtom):
    __slots__ = ()


V_NAT = VNat()
V_ZERO = VZero()
V_EMPTY = VEmpty()
V_UNIT = VUnit()
V_STAR = VStar()


class VSucc(Value):
    __slots__ = ("n",)

    def __init__(self, n: Value):
        self.n = n


class VCoprod(Value):
    __slots__ = ("left", "right")

    def __init__(self, left: Value, right: Value):
        self.left = left
        self.right = right


class VInl(Value):
    __slots__ = ("coprod_type", "value")

    def __init__(self, coprod_type: Value, value: Value):
        self.coprod_type = coprod_type
        self.value = value


class VInr(Value):
    __slots__ = ("coprod_type", "value")

    def __init__(self, coprod_type: Value, value: Value):
        self.coprod_type = coprod_type
        self.value = value


class Neutral:
    __slots__ = ()


class VNeutral(Value):
    __slots__ = ("neutral",)

    def __init__(self, neutral: Neutral):
        self.neutral = neutral


class NVar(Neutral):
    __slots__ = ("level",)

    def __init__(self, level: int):
        self.level = level


class NConst(Neutral):
    """An axiom; never unfolds."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name


class NApp(Neutral):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: Neutral, arg: Value):
        self.fn = fn
        self.arg = arg


class NPr1(Neutral):
    __slots__ = ("pair",)

    def __init__(self, pair: Neutral):
        self.pair = pair


class NPr2(Neutral):
    __slots__ = ("pair",)

    def __init__(self, pair: Neutral):
        self.pair = pair


class NJ(Neutral):
    __slots__ = ("type", "base", "motive", "case_refl", "endpoint", "path")

    def __init__(self, type: Value, base: Value, motive: Closure,
                 case_refl: Value, endpoint: Value, path: Neutral):
        self.type = type
        self.base = base
        self.motive = motive
        self.case_refl = case_refl
        self.endpoint = endpoint
        self.path = path


class NNatInd(Neutral):
    __slots__ = ("motive", "case_zero", "case_succ", "scrutinee")

    def __init__(self, motive: Closure, case_zero: Value, case_succ: Closure,
                 scrutinee: Neutral):
        self.motive = motive
        self.case_zero = case_zero
        self.case_succ = case_succ
        self.scrutinee = scrutinee


class NEmptyInd(Neutral):
    __slots__ = ("motive", "scrutinee")

    def __init__(self, motive: Closure, scrutinee: Neutral):
        self.motive = motive
        self.scrutinee = scrutinee


class NUnitInd(Neutral):
    __slots__ = ("motive", "case_star", "scrutinee")

    def __init__(self, motive: Closure, case_star: Value, scrutinee: Neutral):
        self.motive = motive
        self.case_star = case_star
        self.scrutinee = scrutinee


class NCoprodInd(Neutral):
    __slots__ = ("motive", "case_left", "case_right", "scrutinee")

    def __init__(self, motive: Closure, case_left: Closure,
                 case_right: Closure, scrutinee: Neutral):
        self.motive = motive
        self.case_left = case_left
        self.case_right = case_right
        self.scrutinee = scrutinee


def eval_term(genv, budget: StepBudget, venv: tuple, t: Term) -> Value:
    """Evaluate a well-typed term to a semantic value."""
    if isinstance(t, Var):
        return venv[-1 - t.index]
    if isinstance(t, Const):
        return _eval_const(genv, budget, t.name)
    if isinstance(t, App):
        return do_apply(budget, eval_term(genv, budget, venv, t.fn),
                        eval_term(genv, budget, venv, t.arg))
    if isinstance(t, Lam):
        return VLam(eval_term(genv, budget, venv, t.domain),
                    Closure(genv, venv, t.body))
    if isinstance(t, Pi):
        return VPi(eval_term(genv, budget, venv, t.domain),
                   Closure(genv, venv, t.codomain))
    if isinstance(t, Sigma):
        return VSigma(eval_term(genv, budget, venv, t.first),
                      Closure(genv, venv, t.second))
    if isinstance(t, Pair):
        return VPair(eval_term(genv, budget, venv, t.sigma_type),
                     eval_term(genv, budget, venv, t.fst),
                     eval_term(genv, budget, venv, t.snd))
    if isinstance(t, Pr1):
        return do_pr1(budget, eval_term(genv, budget, venv, t.pair))
    if isinstance(t, Pr2):
        return do_pr2(budget, eval_term(genv, budget, venv, t.pair))
    if isinstance(t, Id):
        return VId(eval_term(genv, budget, venv, t.type),
                   eval_term(genv, budget, venv, t.lhs),
                   eval_term(genv, budget, venv, t.rhs))
    if isinstance(t, Refl):
        return VRefl(eval_term(genv, budget, venv, t.type),
                     eval_term(genv, budget, venv, t.point))
    if isinstance(t, J):
        vpath = eval_term(genv, budget, venv, t.path)
        if isinstance(vpath, VRefl):
            budget.tick()
            return eval_term(genv, budget, venv, t.case_refl)
        if isinstance(vpath, VNeutral):
            return VNeutral(NJ(
                eval_term(genv, budget, venv, t.type),
                eval_term(genv, budget, venv, t.base),
                Closure(genv, venv, t.motive),
                eval_term(genv, budget, venv, t.case_refl),
                eval_term(genv, budget, venv, t.endpoint),
                vpath.neutral))
        raise KernelError("J applied to a non-path value")
    if isinstance(t, Universe):
        return VUniverse(t.level)
    if isinstance(t, Nat):
        return V_NAT
    if isinstance(t, Zero):
        return V_ZERO
    if isinstance(t, Succ):
        # iterative over numeral spines so deep literals cannot blow
        # the interpreter stack
        depth = 0
        while isinstance(t, Succ):
            depth += 1
            t = t.n
        v = eval_term(genv, budget, venv, t)
        for _ in range(depth):
            v = VSucc(v)
        return v
    if isinstance(t, NatInd):
        return do_natind(budget,
                         Closure(genv, venv, t.motive),
                         eval_term(genv, budget, venv, t.case_zero),
                         Closure(genv, venv, t.case_succ),
                         eval_term(genv, budget, venv, t.scrutinee))
    if isinstance(t, Empty):
        return V_EMPTY
    if isinstance(t, EmptyInd):
        vs = eval_term(genv, budget, venv, t.scrutinee)
        if isinstance(vs, VNeutral):
            return VNeutral(NEmptyInd(Closure(genv, venv, t.motive),
                                      vs.neutral))
        raise KernelError("EmptyInd applied to a non-neutral value")
    if isinstance(t, Unit):
        return V_UNIT
    if isinstance(t, Star):
        return V_STAR
    if isinstance(t, UnitInd):
        vs = eval_term(genv, budget, venv, t.scrutinee)
        if isinstance(vs, VStar):
            budget.tick()
            return eval_term(genv, budget, venv, t.case_star)
        if isinstance(vs, VNeutral):
            return VNeutral(NUnitInd(Closure(genv, venv, t.motive),
                                     eval_term(genv, budget, venv,
                                               t.case_star),
                                     vs.neutral))
        raise KernelError("UnitInd applied to a non-unit value")
    if isinstance(t, Coprod):
        return VCoprod(eval_term(genv, budget, venv, t.left),
                       eval_term(genv, budget, venv, t.right))
    if isinstance(t, Inl):
        return VInl(eval_term(genv, budget, venv, t.coprod_type),
                    eval_term(genv, budget, venv, t.value))
    if isinstance(t, Inr):
        return VInr(eval_term(genv, budget, venv, t.coprod_type),
                    eval_term(genv, budget, venv, t.value))
    if isinstance(t, CoprodInd):
        vs = eval_term(genv, budget, venv, t.scrutinee)
        if isinstance(vs, VInl):
            budget.tick()
            return Closure(genv, venv, t.case_left).apply(budget, vs.value)
        if isinstance(vs, VInr):
            budget.tick()
            return Closure(genv, venv, t.case_right).apply(budget, vs.value)
        if isinstance(vs, VNeutral):
            return VNeutral(NCoprodInd(Closure(genv, venv, t.motive),
                                       Closure(genv, venv, t.case_left),
                                       Closure(genv, venv, t.case_right),
                                       vs.neutral))
        raise KernelError("CoprodInd applied to a non-coproduct value")
    raise KernelError(f"cannot evaluate {type(t).__name__}")


def _eval_const(genv, budget: StepBudget, name: str) -> Value:
    decl = genv.lookup(name)
    if decl is None:
        raise KernelError(f"evaluation reached undeclared constant {name}")
    if decl.body is None:
        return VNeutral(NConst(name))
    budget.tick()
    cached = decl._value_cache
    if cached is None:
        cached = eval_term(genv, budget, (), decl.body)
        decl._value_cache = cached
    return cached


def do_apply(budget: StepBudget, vf: Value, va: Value) -> Value:
    if isinstance(vf, VLam):
        budget.tick()
        return vf.body.apply(budget, va)
    if isinstance(vf, VNeutral):
        return VNeutral(NApp(vf.neutral, va))
    raise KernelError("application of a non-function value")


def do_pr1(budget: StepBudget, vp: Value) -> Value:
    if isinstance(vp, VPair):
        budget.tick()
        return vp.fst
    if isinstance(vp, VNeutral):
        return VNeutral(NPr1(vp.neutral))
    raise KernelError("pr1 of a non-pair value")


def do_pr2(budget: StepBudget, vp: Value) -> Value:
    if isinstance(vp, VPair):
        budget.tick()
        return vp.snd
    if isinstance(vp, VNeutral):
        return VNeutral(NPr2(vp.neutral))
    raise KernelError("pr2 of a non-pair value")


def do_natind(budget: StepBudget, motive: Closure, case_zero: Value,
              case_succ: Closure, scrutinee: Value) -> Value:
    # peel the successor spine first so the recursion is a loop
    preds = []
    v = scrutinee
    while isinstance(v, VSucc):
        preds.append(v.n)
        v = v.n
    if isinstance(v, VZero):
        budget.tick()
        acc = case_zero
    elif isinstance(v, VNeutral):
        acc = VNeutral(NNatInd(motive, case_zero, case_succ, v.neutral))
    else:
        raise KernelError("NatInd applied to a non-numeral value")
    for m in reversed(preds):
        budget.tick()
        acc = case_succ.apply(budget, m, acc)
    return acc


def _quote_closure(budget: StepBudget, depth: int, clo: Closure,
                   arity: int) -> Term:
    args = tuple(VNeutral(NVar(depth + i)) for i in range(arity))
    return quote(budget, depth + arity, clo.apply(budget, *args))


def quote(budget: StepBudget, depth: int, v: Value) -> Term:
    """Read a value back to a normal-form term at the given binder depth."""
    if isinstance(v, VUniverse):
        return Universe(v.level)
    if isinstance(v, VPi):
        return Pi(quote(budget, depth, v.domain),
                  _quote_closure(budget, depth, v.codomain, 1))
    if isinstance(v, VLam):
        body = _quote_closure(budget, depth, v.body, 1)
        # eta for functions: \x. f x  ~>  f   (x not free in f)
        if (isinstance(body, App) and body.arg == Var(0)
                and not occurs_free(body.fn, 0)):
            return shift(body.fn, 0, -1)
        return Lam(quote(budget, depth, v.domain), body)
    if isinstance(v, VSigma):
        return Sigma(quote(budget, depth, v.first),
                     _quote_closure(budget, depth, v.second, 1))
    if isinstance(v, VPair):
        qfst = quote(budget, depth, v.fst)
        qsnd = quote(budget, depth, v.snd)
        # surjective pairing: (pr1 p, pr2 p)  ~>  p
        if (isinstance(qfst, Pr1) and isinstance(qsnd, Pr2)
                and qfst.pair == qsnd.pair):
            return qfst.pair
        return Pair(quote(budget, depth, v.sigma_type), qfst, qsnd)
    if isinstance(v, VId):
        return Id(quote(budget, depth, v.type), quote(budget, depth, v.lhs),
                  quote(budget, depth, v.rhs))
    if isinstance(v, VRefl):
        return Refl(quote(budget, depth, v.type),
                    quote(budget, depth, v.point))
    if isinstance(v, VNat):
        return Nat()
    if isinstance(v, VZero):
        return Zero()
    if isinstance(v, VSucc):
        count = 0
        while isinstance(v, VSucc):
            count += 1
            v = v.n
        inner = quote(budget, depth, v)
        for _ in range(count):
            inner = Succ(inner)
        return inner
    if isinstance(v, VEmpty):
        return Empty()
    if isinstance(v, VUnit):
        return Unit()
    if isinstance(v, VStar):
        return Star()
    if isinstance(v, VCoprod):
        return Coprod(quote(budget, depth, v.left),
                      quote(budget, depth, v.right))
    if isinstance(v, VInl):
        return Inl(quote(budget, depth, v.coprod_type),
                   quote(budget, depth, v.value))
    if isinstance(v, VInr):
        return Inr(quote(budget, depth, v.coprod_type),
                   quote(budget, depth, v.value))
    if isinstance(v, VNeutral):
        return _quote_neutral(budget, depth, v.neutral)
    raise KernelError(f"cannot quote {type(v).__name__}")


def _quote_neutral(budget: StepBudget, depth: int, n: Neutral) -> Term:
    if isinstance(n, NVar):
        return Var(depth - 1 - n.level)
    if isinstance(n, NConst):
        return Const(n.name)
    if isinstance(n, NApp):
        return App(_quote_neutral(budget, depth, n.fn),
                   quote(budget, depth, n.arg))
    if isinstance(n, NPr1):
        return Pr1(_quote_neutral(budget, depth, n.pair))
    if isinstance(n, NPr2):
        return Pr2(_quote_neutral(budget, depth, n.pair))
    if isinstance(n, NJ):
        return J(quote(budget, depth, n.type),
                 quote(budget, depth, n.base),
                 _quote_closure(budget, depth, n.motive, 2),
                 quote(budget, depth, n.case_refl),
                 quote(budget, depth, n.endpoint),
                 _quote_neutral(budget, depth, n.path))
    if isinstance(n, NNatInd):
        return NatInd(_quote_closure(budget, depth, n.motive, 1),
                      quote(budget, depth, n.case_zero),
                      _quote_closure(budget, depth, n.case_succ, 2),
                      _quote_neutral(budget, depth, n.scrutinee))
    if isinstance(n, NEmptyInd):
        return EmptyInd(_quote_closure(budget, depth, n.motive, 1),
                        _quote_neutral(budget, depth, n.scrutinee))
    if isinstance(n, NUnitInd):
        return UnitInd(_quote_closure(budget, depth, n.motive, 1),
                       quote(budget, depth, n.case_star),
                       _quote_neutral(budget, depth, n.scrutinee))
    if isinstance(n, NCoprodInd):
        return CoprodInd(_quote_closure(budget, depth, n.motive, 1),
                         _quote_closure(budget, depth, n.case_left, 1),
                         _quote_closure(budget, depth, n.case_right, 1),
                         _quote_neutral(budget, depth, n.scrutinee))
    raise KernelError(f"cannot quote neutral {type(n).__name__}")


def fresh_env(ctx_len: int) -> tuple:
    """Value environment binding every context entry to itself."""
    return tuple(VNeutral(NVar(i)) for i in range(ctx_len))


def normalize(genv, t: Term, ctx_len: int = 0,
              max_steps: int = DEFAULT_MAX_STEPS,
              budget: StepBudget | None = None) -> Term:
    """Full beta-iota-delta-eta normal form of a well-typed term."""
    if budget is None:
        budget = StepBudget(max_steps)
    v = eval_term(genv, budget, fresh_env(ctx_len), t)
    return quote(budget, ctx_len, v)


def definitionally_equal(genv, t: Term, u: Term, ctx_len: int = 0,
                         max_steps: int = DEFAULT_MAX_STEPS,
                         budget: StepBudget | None = None) -> bool:
    """True iff the normal forms of t and u are alpha-equal."""
    if t == u:
        return True
    if budget is None:
        budget = StepBudget(max_steps)
    nt = normalize(genv, t, ctx_len, budget=budget)
    nu = normalize(genv, u, ctx_len, budget=budget)
    return nt == nu
