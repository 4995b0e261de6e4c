"""Lexer and parser for the named surface syntax (.uf files).

Grammar (comments `--`, whitespace insignificant):

    file      := { import | decl }
    import    := "import" string-literal
    decl      := ("def" | "axiom") ident { binder } ":" term [ ":=" term ]
    binder    := "(" ident ":" term ")"
    term      := "fun" binder+ "=>" term
               | "forall" binder+ "," term
               | "Sum" binder "," term
               | arrow
    arrow     := eq [ "->" arrow ]          (right associative)
    eq        := app [ "=" app "in" app ]
    app       := atom { atom }              (left associative)
    atom      := ident | "Type" nat | nat | "(" term ")"

The Unicode spellings ∏, ∑, λ and ⨿ are accepted as synonyms for
forall, Sum, fun and Coprod.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Union

from .diagnostics import Diagnostic, E_IMPORT_CYCLE, E_PARSE, SourceSpan

KEYWORDS = {"def", "axiom", "import", "fun", "forall", "Sum", "Type", "in"}

_UNICODE_ALIASES = {"∏": ("KW", "forall"), "∑": ("KW", "Sum"),
                    "λ": ("KW", "fun"), "⨿": ("IDENT", "Coprod")}

_PUNCT = (":=", "->", "=>", "(", ")", ":", ",", "=")


@dataclass(frozen=True)
class Token:
    kind: str  # KW, IDENT, NUMBER, STRING, PUNCT, EOF
    text: str
    span: SourceSpan


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def tokenize(text: str, path: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span(l0: int, c0: int) -> SourceSpan:
        return SourceSpan(path, l0, c0, line, col)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "-" and i + 1 < n and text[i + 1] == "-":
            while i < n and text[i] != "\n":
                i += 1
            continue
        l0, c0 = line, col
        if c in _UNICODE_ALIASES:
            kind, word = _UNICODE_ALIASES[c]
            i += 1
            col += 1
            tokens.append(Token(kind, word, span(l0, c0)))
            continue
        if _is_ident_start(c):
            j = i
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            col += j - i
            i = j
            kind = "KW" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, span(l0, c0)))
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            word = text[i:j]
            col += j - i
            i = j
            tokens.append(Token("NUMBER", word, span(l0, c0)))
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise Diagnostic(E_PARSE, "unterminated string literal",
                                 span=SourceSpan(path, l0, c0, l0, c0))
            word = text[i + 1:j]
            col += j + 1 - i
            i = j + 1
            tokens.append(Token("STRING", word, span(l0, c0)))
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                i += len(p)
                col += len(p)
                tokens.append(Token("PUNCT", p, span(l0, c0)))
                break
        else:
            raise Diagnostic(E_PARSE, f"unexpected character {c!r}",
                             span=SourceSpan(path, l0, c0, l0, c0))
    tokens.append(Token("EOF", "", SourceSpan(path, line, col, line, col)))
    return tokens


# -- surface AST -------------------------------------------------------

@dataclass(frozen=True)
class STerm:
    pass


@dataclass(frozen=True)
class SVar(STerm):
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class SType(STerm):
    level: int
    span: SourceSpan


@dataclass(frozen=True)
class SNum(STerm):
    value: int
    span: SourceSpan


@dataclass(frozen=True)
class SApp(STerm):
    fn: STerm
    arg: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SArrow(STerm):
    domain: STerm
    codomain: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SEq(STerm):
    lhs: STerm
    rhs: STerm
    type: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SBinder:
    name: str
    type: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SLam(STerm):
    binders: tuple[SBinder, ...]
    body: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SPi(STerm):
    binders: tuple[SBinder, ...]
    body: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SSigma(STerm):
    binder: SBinder
    body: STerm
    span: SourceSpan


@dataclass(frozen=True)
class SurfaceDecl:
    keyword: str  # "def" | "axiom"
    name: str
    binders: tuple[SBinder, ...]
    result_type: STerm
    body: Optional[STerm]
    span: SourceSpan
    name_span: SourceSpan


@dataclass(frozen=True)
class SImport:
    path: str
    span: SourceSpan


@dataclass
class ParsedFile:
    path: str
    imports: list[SImport] = field(default_factory=list)
    decls: list[SurfaceDecl] = field(default_factory=list)


class _Parser:
    def __init__(self, tokens: list[Token], path: str):
        self.tokens = tokens
        self.pos = 0
        self.path = path

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise Diagnostic(E_PARSE, message, span=tok.span)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            found = tok.text or "end of file"
            self.fail(f"expected {want!r}, found {found!r}")
        return self.next()

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "PUNCT" and tok.text == text

    def at_kw(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "KW" and tok.text == text

    # -- file level ---------------------------------------------------

    def parse_file(self) -> ParsedFile:
        parsed = ParsedFile(self.path)
        while self.peek().kind != "EOF":
            if self.at_kw("import"):
                start = self.next()
                tok = self.expect("STRING")
                parsed.imports.append(SImport(tok.text, start.span))
            elif self.at_kw("def") or self.at_kw("axiom"):
                parsed.decls.append(self.parse_decl())
            else:
                self.fail("expected 'def', 'axiom' or 'import'")
        return parsed

    def parse_decl(self) -> SurfaceDecl:
        kw = self.next()
        name = self.expect("IDENT")
        binders = []
        while self.at_punct("("):
            binders.append(self.parse_binder())
        self.expect("PUNCT", ":")
        result_type = self.parse_term()
        body = None
        if self.at_punct(":="):
            self.next()
            body = self.parse_term()
        if kw.text == "def" and body is None:
            self.fail(f"definition '{name.text}' is missing ':= body'",
                      tok=name)
        if kw.text == "axiom" and body is not None:
            self.fail(f"axiom '{name.text}' cannot have a body", tok=name)
        return SurfaceDecl(kw.text, name.text, tuple(binders), result_type,
                           body, kw.span, name.span)

    def parse_binder(self) -> SBinder:
        start = self.expect("PUNCT", "(")
        name = self.expect("IDENT")
        self.expect("PUNCT", ":")
        ty = self.parse_term()
        self.expect("PUNCT", ")")
        return SBinder(name.text, ty, start.span)

    # -- terms ----------------------------------------------------------

    def parse_term(self) -> STerm:
        if self.at_kw("fun"):
            start = self.next()
            binders = [self.parse_binder()]
            while self.at_punct("("):
                binders.append(self.parse_binder())
            self.expect("PUNCT", "=>")
            body = self.parse_term()
            return SLam(tuple(binders), body, start.span)
        if self.at_kw("forall"):
            start = self.next()
            binders = [self.parse_binder()]
            while self.at_punct("("):
                binders.append(self.parse_binder())
            self.expect("PUNCT", ",")
            body = self.parse_term()
            return SPi(tuple(binders), body, start.span)
        if self.at_kw("Sum"):
            start = self.next()
            binder = self.parse_binder()
            self.expect("PUNCT", ",")
            body = self.parse_term()
            return SSigma(binder, body, start.span)
        return self.parse_arrow()

    def parse_arrow(self) -> STerm:
        left = self.parse_eq()
        if self.at_punct("->"):
            arrow = self.next()
            right = self.parse_term_after_arrow()
            return SArrow(left, right, arrow.span)
        return left

    def parse_term_after_arrow(self) -> STerm:
        # the right-hand side of an arrow admits the binder forms again
        return self.parse_term()

    def parse_eq(self) -> STerm:
        lhs = self.parse_app()
        if self.at_punct("="):
            eq = self.next()
            rhs = self.parse_app()
            if not self.at_kw("in"):
                self.fail("expected 'in' after the right-hand side of '='")
            self.next()
            ty = self.parse_app()
            return SEq(lhs, rhs, ty, eq.span)
        return lhs

    def parse_app(self) -> STerm:
        head = self.parse_atom()
        while self.at_atom_start():
            arg = self.parse_atom()
            head = SApp(head, arg, arg_span(arg))
        return head

    def at_atom_start(self) -> bool:
        tok = self.peek()
        if tok.kind in ("IDENT", "NUMBER"):
            return True
        if tok.kind == "KW" and tok.text == "Type":
            return True
        return tok.kind == "PUNCT" and tok.text == "("

    def parse_atom(self) -> STerm:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.next()
            return SVar(tok.text, tok.span)
        if tok.kind == "NUMBER":
            self.next()
            return SNum(int(tok.text), tok.span)
        if tok.kind == "KW" and tok.text == "Type":
            self.next()
            num = self.expect("NUMBER")
            return SType(int(num.text), tok.span)
        if self.at_punct("("):
            self.next()
            inner = self.parse_term()
            self.expect("PUNCT", ")")
            return inner
        self.fail(f"expected a term, found {tok.text or 'end of file'!r}")


def arg_span(t: STerm) -> SourceSpan:
    return t.span if hasattr(t, "span") else SourceSpan("<unknown>", 0, 0)


def parse_file(text: str, path: str) -> ParsedFile:
    """Parse a whole file; raises Diagnostic(E009) on the first error."""
    return _Parser(tokenize(text, path), path).parse_file()


def parse_term_text(text: str, origin: str = "<arg>") -> STerm:
    """Parse a standalone term (used by the normalize command)."""
    parser = _Parser(tokenize(text, origin), origin)
    term = parser.parse_term()
    if parser.peek().kind != "EOF":
        parser.fail("trailing input after term")
    return term


def load_file(path: str) -> ParsedFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise Diagnostic(E_PARSE, f"cannot read {path}: {exc.strerror}",
                         span=SourceSpan(path, 1, 1)) from exc
    return parse_file(text, path)


def resolve_imports(entry: Union[str, list[str]],
                    cache: Optional[dict[str, ParsedFile]] = None
                    ) -> tuple[list[str], dict[str, ParsedFile]]:
    """Topological order of the import DAG rooted at the entry file(s).

    Returns the ordered file list (dependencies first, each file once)
    and the parsed files keyed by real path.  Raises Diagnostic(E010)
    on a cycle, listing it.  An optional cache of already parsed files
    avoids re-reading shared imports across calls.
    """
    entries = [entry] if isinstance(entry, str) else list(entry)
    order: list[str] = []
    parsed: dict[str, ParsedFile] = {}
    state: dict[str, str] = {}  # "visiting" | "done"
    stack: list[str] = []

    def visit(path: str, span: Optional[SourceSpan]) -> None:
        real = os.path.realpath(path)
        if state.get(real) == "done":
            return
        if state.get(real) == "visiting":
            cycle = stack[stack.index(real):] + [real]
            pretty = " -> ".join(os.path.basename(p) for p in cycle)
            raise Diagnostic(E_IMPORT_CYCLE, f"import cycle: {pretty}",
                             span=span or SourceSpan(path, 1, 1))
        state[real] = "visiting"
        stack.append(real)
        if cache is not None and real in cache:
            pf = cache[real]
        else:
            pf = load_file(real)
            if cache is not None:
                cache[real] = pf
        parsed[real] = pf
        base = os.path.dirname(real)
        for imp in pf.imports:
            target = imp.path
            if not os.path.isabs(target):
                target = os.path.join(base, target)
            visit(target, imp.span)
        stack.pop()
        state[real] = "done"
        order.append(real)

    for e in entries:
        visit(e, None)
    return order, parsed
