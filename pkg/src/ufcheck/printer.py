"""Rendering core terms back to surface syntax.

The output always re-parses and re-elaborates to an alpha-equal core
term.  Eliminators print their binding arguments as literal `fun`
terms; the elaborator contracts those administrative redexes again, so
the round trip is exact.

Binder annotations for coprodind cases are not stored in the core node;
they are recovered by inferring the scrutinee's type, which is why the
renderer takes the global environment and the ambient context.
"""

from __future__ import annotations

from .elaborate import BUILTIN_NAMES
from .surface import KEYWORDS
from .terms import (App, Const, Coprod, CoprodInd, Empty, EmptyInd, Id, Inl,
                    Inr, J, KernelError, Lam, Nat, NatInd, Pair, Pi, Pr1,
                    Pr2, Refl, Sigma, Star, Succ, Term, Unit, UnitInd,
                    Universe, Var, Zero, ctx_extend, occurs_free, shift)

_TERM, _ARROW, _EQ, _APP, _ATOM = 0, 1, 2, 3, 4


class _Renderer:
    def __init__(self, env, names: list[str], ctx: tuple):
        self.env = env
        self.names = names
        self.ctx = ctx
        reserved = set(KEYWORDS) | set(BUILTIN_NAMES) | {"in"}
        if env is not None:
            reserved.update(env.names())
        self.reserved = reserved

    def fresh_name(self) -> str:
        name = f"x{len(self.names)}"
        while name in self.reserved:
            name += "_"
        return name

    def _under(self, ty: Term):
        name = self.fresh_name()
        self.names.append(name)
        self.ctx = ctx_extend(self.ctx, ty)
        return name

    def _leave(self, n: int = 1):
        del self.names[-n:]
        self.ctx = self.ctx[:-n]

    def binding(self, ty: Term, body: Term) -> tuple[str, str, str]:
        ty_str = self.render(ty, _TERM)
        name = self._under(ty)
        body_str = self.render(body, _TERM)
        self._leave()
        return name, ty_str, body_str

    def fun1(self, ty: Term, body: Term) -> str:
        name, ty_str, body_str = self.binding(ty, body)
        return f"(fun ({name} : {ty_str}) => {body_str})"

    def fun2(self, ty1: Term, ty2: Term, body: Term) -> str:
        ty1_str = self.render(ty1, _TERM)
        n1 = self._under(ty1)
        ty2_str = self.render(ty2, _TERM)
        n2 = self._under(ty2)
        body_str = self.render(body, _TERM)
        self._leave(2)
        return f"(fun ({n1} : {ty1_str}) ({n2} : {ty2_str}) => {body_str})"

    def numeral(self, t: Term):
        count = 0
        while isinstance(t, Succ):
            count += 1
            t = t.n
        return (count, t)

    def coprod_of(self, scrutinee: Term) -> Coprod:
        # late import: the checker renders diagnostics with this module
        from .check import infer
        if self.env is None:
            raise KernelError("rendering coprodind requires an environment")
        ty = infer(self.env, self.ctx, scrutinee)
        ty = _normalize(self.env, ty, len(self.ctx))
        if not isinstance(ty, Coprod):
            raise KernelError("coprodind scrutinee type is not a coproduct")
        return ty

    def render(self, t: Term, min_level: int) -> str:
        text, level = self._render(t)
        if level < min_level:
            return f"({text})"
        return text

    def _render(self, t: Term) -> tuple[str, int]:
        if isinstance(t, Var):
            if t.index >= len(self.names):
                raise KernelError(f"variable #{t.index} escapes the "
                                  "rendering context")
            return self.names[-1 - t.index], _ATOM
        if isinstance(t, Const):
            return t.name, _ATOM
        if isinstance(t, Universe):
            return f"Type {t.level}", _ATOM
        if isinstance(t, Nat):
            return "Nat", _ATOM
        if isinstance(t, Empty):
            return "Empty", _ATOM
        if isinstance(t, Unit):
            return "Unit", _ATOM
        if isinstance(t, Star):
            return "star", _ATOM
        if isinstance(t, Zero):
            return "0", _ATOM
        if isinstance(t, Succ):
            count, tail = self.numeral(t)
            if isinstance(tail, Zero):
                return str(count), _ATOM
            text = self.render(tail, _ATOM)
            for _ in range(count):
                text = f"succ {text}"
                text = f"({text})"
            # drop the outermost parentheses; the level reports APP
            return text[1:-1], _APP
        if isinstance(t, App):
            fn = self.render(t.fn, _APP)
            arg = self.render(t.arg, _ATOM)
            return f"{fn} {arg}", _APP
        if isinstance(t, Pi):
            if not occurs_free(t.codomain, 0):
                dom = self.render(t.domain, _EQ)
                self._under(t.domain)
                cod = self.render(t.codomain, _ARROW)
                self._leave()
                return f"{dom} -> {cod}", _ARROW
            name, ty_str, body = self.binding(t.domain, t.codomain)
            return f"forall ({name} : {ty_str}), {body}", _TERM
        if isinstance(t, Lam):
            name, ty_str, body = self.binding(t.domain, t.body)
            return f"fun ({name} : {ty_str}) => {body}", _TERM
        if isinstance(t, Sigma):
            name, ty_str, body = self.binding(t.first, t.second)
            return f"Sum ({name} : {ty_str}), {body}", _TERM
        if isinstance(t, Id):
            lhs = self.render(t.lhs, _APP)
            rhs = self.render(t.rhs, _APP)
            ty = self.render(t.type, _APP)
            return f"{lhs} = {rhs} in {ty}", _EQ
        if isinstance(t, Refl):
            ty = self.render(t.type, _ATOM)
            point = self.render(t.point, _ATOM)
            return f"refl {ty} {point}", _APP
        if isinstance(t, Pair):
            s = self.render(t.sigma_type, _ATOM)
            a = self.render(t.fst, _ATOM)
            b = self.render(t.snd, _ATOM)
            return f"pair {s} {a} {b}", _APP
        if isinstance(t, Pr1):
            return f"pr1 {self.render(t.pair, _ATOM)}", _APP
        if isinstance(t, Pr2):
            return f"pr2 {self.render(t.pair, _ATOM)}", _APP
        if isinstance(t, Coprod):
            left = self.render(t.left, _ATOM)
            right = self.render(t.right, _ATOM)
            return f"Coprod {left} {right}", _APP
        if isinstance(t, Inl) or isinstance(t, Inr):
            if not isinstance(t.coprod_type, Coprod):
                raise KernelError("injection annotation lost its coproduct "
                                  "shape")
            kw = "inl" if isinstance(t, Inl) else "inr"
            a = self.render(t.coprod_type.left, _ATOM)
            b = self.render(t.coprod_type.right, _ATOM)
            v = self.render(t.value, _ATOM)
            return f"{kw} {a} {b} {v}", _APP
        if isinstance(t, J):
            ty = self.render(t.type, _ATOM)
            base = self.render(t.base, _ATOM)
            path_ty = Id(shift(t.type, 0, 1), shift(t.base, 0, 1), Var(0))
            motive = self.fun2(t.type, path_ty, t.motive)
            cr = self.render(t.case_refl, _ATOM)
            endpoint = self.render(t.endpoint, _ATOM)
            path = self.render(t.path, _ATOM)
            return f"J {ty} {base} {motive} {cr} {endpoint} {path}", _APP
        if isinstance(t, NatInd):
            motive = self.fun1(Nat(), t.motive)
            cz = self.render(t.case_zero, _ATOM)
            cs = self.fun2(Nat(), t.motive, t.case_succ)
            n = self.render(t.scrutinee, _ATOM)
            return f"natind {motive} {cz} {cs} {n}", _APP
        if isinstance(t, EmptyInd):
            motive = self.fun1(Empty(), t.motive)
            e = self.render(t.scrutinee, _ATOM)
            return f"emptyind {motive} {e}", _APP
        if isinstance(t, UnitInd):
            motive = self.fun1(Unit(), t.motive)
            c = self.render(t.case_star, _ATOM)
            u = self.render(t.scrutinee, _ATOM)
            return f"unitind {motive} {c} {u}", _APP
        if isinstance(t, CoprodInd):
            cop = self.coprod_of(t.scrutinee)
            motive = self.fun1(cop, t.motive)
            left = self.fun1(cop.left, t.case_left)
            right = self.fun1(cop.right, t.case_right)
            s = self.render(t.scrutinee, _ATOM)
            return f"coprodind {motive} {left} {right} {s}", _APP
        raise KernelError(f"cannot render {type(t).__name__}")


def _normalize(env, t: Term, ctx_len: int) -> Term:
    from .conversion import normalize
    return normalize(env, t, ctx_len)


def render_term(env, t: Term, ctx: tuple = (),
                names: list[str] | None = None) -> str:
    """Render t as parseable surface text.

    ctx gives the types of free variables (innermost last); names may
    override the generated positional names.
    """
    if names is None:
        names = [f"x{i}" for i in range(len(ctx))]
    if len(names) != len(ctx):
        raise KernelError("names and context length mismatch")
    return _Renderer(env, list(names), tuple(ctx)).render(t, _TERM)
