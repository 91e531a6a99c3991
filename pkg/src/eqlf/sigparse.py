"""Concrete syntax: lexer, parser, elaboration to core terms, and printer.

Surface grammar::

    decl  ::= ident ":" expr "."
    expr  ::= "{" ident ":" expr "}" expr
            | "[" ident ":" expr "]" expr
            | app ("->" expr)?
    app   ::= atom+                   -- "lsuc" takes the next atom
    atom  ::= ident | "*" | "Sort" | "Lvl" | "lzero" | number
            | "Eq" "(" expr ";" expr ";" expr ")" | "(" expr ")"

A binder may also close an application as its last argument.  Whether an
expression becomes a class or an object is decided by its position: a Pi in
class position is a Pi-class, in object position a Pi-sort.  Binder domains
and equation sorts are elaborated as objects whenever possible.  Numerals
are sugar for ``succ (... (succ zero))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from eqlf.core import (
    BULLET,
    LVL,
    LZERO,
    SORT,
    App,
    BVar,
    Bullet,
    Class,
    EqCls,
    Incl,
    Lam,
    LSuc,
    LZero,
    Lvl,
    Object,
    PiCls,
    PiSort,
    SortCls,
    Var,
    abstract,
    free_vars,
    spine,
)

KEYWORDS = {"Sort", "Lvl", "Eq", "lzero", "lsuc"}
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def covers(self, other: SourceSpan) -> bool:
        return (self.start_line, self.start_col) <= (other.start_line, other.start_col) and (
            other.end_line,
            other.end_col,
        ) <= (self.end_line, self.end_col)

    def __str__(self):
        return f"{self.file}:{self.start_line}:{self.start_col}"


def _join(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    return SourceSpan(a.file, a.start_line, a.start_col, b.end_line, b.end_col)


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected: frozenset[str] = frozenset()):
        self.message = message
        self.span = span
        self.expected = expected
        super().__init__(f"{span}: {message}")


# -- lexer -----------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "num", "kw", punctuation text, or "eof"
    text: str
    span: SourceSpan


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->|→)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[:.{}\[\]();*])
    """,
    re.VERBOSE,
)


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(file, line, col, line, col + 1)
            raise ParseError(f"unexpected character {text[pos]!r}", span)
        lexeme = m.group()
        kind = m.lastgroup
        end_line, end_col = line, col
        for ch in lexeme:
            if ch == "\n":
                end_line, end_col = end_line + 1, 1
            else:
                end_col += 1
        if kind not in ("ws", "comment"):
            span = SourceSpan(file, line, col, end_line, end_col)
            if kind == "ident" and lexeme in KEYWORDS:
                tokens.append(Token("kw", lexeme, span))
            elif kind == "punct":
                tokens.append(Token(lexeme, lexeme, span))
            elif kind == "arrow":
                tokens.append(Token("->", lexeme, span))
            else:
                tokens.append(Token(kind, lexeme, span))
        pos, line, col = m.end(), end_line, end_col
    # EOF points at the last character so diagnostics stay inside the input.
    if tokens:
        last = tokens[-1].span
        eof = SourceSpan(file, last.end_line, max(1, last.end_col - 1), last.end_line, last.end_col)
    else:
        eof = SourceSpan(file, 1, 1, 1, 1)
    tokens.append(Token("eof", "", eof))
    return tokens


# -- surface tree ----------------------------------------------------------


@dataclass(frozen=True)
class Surface:
    span: SourceSpan = field(compare=False)

    def children(self) -> list[Surface]:
        return []


@dataclass(frozen=True)
class SIdent(Surface):
    name: str = ""


@dataclass(frozen=True)
class SKeyword(Surface):
    word: str = ""  # "*", "Sort", "Lvl", "lzero"


@dataclass(frozen=True)
class SNum(Surface):
    value: int = 0


@dataclass(frozen=True)
class SLSuc(Surface):
    arg: Surface = None

    def children(self):
        return [self.arg]


@dataclass(frozen=True)
class SBinder(Surface):
    kind: str = ""  # "pi", "lam", or "arrow"
    name: str = "_"
    domain: Surface = None
    body: Surface = None

    def children(self):
        return [self.domain, self.body]


@dataclass(frozen=True)
class SEq(Surface):
    sort: Surface = None
    lhs: Surface = None
    rhs: Surface = None

    def children(self):
        return [self.sort, self.lhs, self.rhs]


@dataclass(frozen=True)
class SApp(Surface):
    fun: Surface = None
    arg: Surface = None

    def children(self):
        return [self.fun, self.arg]


@dataclass(frozen=True)
class SParen(Surface):
    inner: Surface = None

    def children(self):
        return [self.inner]


@dataclass(frozen=True)
class SurfaceDecl:
    name: str
    cls: Class
    span: SourceSpan
    surface: Surface = field(default=None, compare=False, repr=False)


# -- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def fail(self, expected: set[str]):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(
            f"expected {' or '.join(sorted(expected))}, found {found}", t.span, frozenset(expected)
        )

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail({kind})
        return self.advance()

    def at_atom(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "num", "*", "(", "{", "["):
            return True
        return t.kind == "kw"

    def expr(self) -> Surface:
        t = self.tok
        if t.kind in ("{", "["):
            return self.binder()
        left = self.app()
        if self.tok.kind == "->":
            self.advance()
            right = self.expr()
            return SBinder(_join(left.span, right.span), "arrow", "_", left, right)
        return left

    def binder(self) -> Surface:
        open_tok = self.advance()
        close = "}" if open_tok.kind == "{" else "]"
        name = self.expect("ident").text
        self.expect(":")
        dom = self.expr()
        self.expect(close)
        body = self.expr()
        kind = "pi" if open_tok.kind == "{" else "lam"
        return SBinder(_join(open_tok.span, body.span), kind, name, dom, body)

    def app(self) -> Surface:
        head = self.atom()
        while self.at_atom():
            if self.tok.kind in ("{", "["):
                arg = self.binder()
                head = SApp(_join(head.span, arg.span), head, arg)
                break
            arg = self.atom()
            head = SApp(_join(head.span, arg.span), head, arg)
        return head

    def atom(self) -> Surface:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return SIdent(t.span, t.text)
        if t.kind == "num":
            self.advance()
            return SNum(t.span, int(t.text))
        if t.kind == "*":
            self.advance()
            return SKeyword(t.span, "*")
        if t.kind == "kw":
            if t.text == "lsuc":
                self.advance()
                if not self.at_atom() or self.tok.kind in ("{", "["):
                    self.fail({"atom"})
                arg = self.atom()
                return SLSuc(_join(t.span, arg.span), arg)
            if t.text == "Eq":
                self.advance()
                self.expect("(")
                s = self.expr()
                self.expect(";")
                lhs = self.expr()
                self.expect(";")
                rhs = self.expr()
                end = self.expect(")")
                return SEq(_join(t.span, end.span), s, lhs, rhs)
            self.advance()
            return SKeyword(t.span, t.text)
        if t.kind == "(":
            self.advance()
            inner = self.expr()
            end = self.expect(")")
            return SParen(_join(t.span, end.span), inner)
        self.fail({"identifier", "(", "*", "Sort", "Lvl", "Eq", "lzero", "lsuc", "number"})

    def decls(self) -> list[tuple[Token, Surface, Token]]:
        out = []
        while self.tok.kind != "eof":
            name = self.expect("ident")
            self.expect(":")
            body = self.expr()
            end = self.expect(".")
            out.append((name, body, end))
        return out

    def finish(self):
        if self.tok.kind != "eof":
            self.fail({"end of input"})


def _decode(text) -> str:
    if isinstance(text, bytes):
        return text.decode("utf-8")
    return text


def parse_surface(text, file: str = "<input>") -> Surface:
    p = _Parser(tokenize(_decode(text), file))
    e = p.expr()
    p.finish()
    return e


# -- elaboration -----------------------------------------------------------


class _Elab:
    def __init__(self, succ: str = "succ", zero: str = "zero"):
        self.succ = succ
        self.zero = zero

    def obj(self, e: Surface) -> Object:
        if isinstance(e, SIdent):
            return Var(e.name)
        if isinstance(e, SKeyword):
            if e.word == "*":
                return BULLET
            if e.word == "Lvl":
                return LVL
            if e.word == "lzero":
                return LZERO
            raise ParseError(f"{e.word} is a class, not an object", e.span, frozenset({"object"}))
        if isinstance(e, SNum):
            t: Object = Var(self.zero)
            for _ in range(e.value):
                t = App(Var(self.succ), t)
            return t
        if isinstance(e, SLSuc):
            return LSuc(self.obj(e.arg))
        if isinstance(e, SApp):
            return App(self.obj(e.fun), self.obj(e.arg))
        if isinstance(e, SParen):
            return self.obj(e.inner)
        if isinstance(e, SBinder):
            dom = self.domain(e.domain)
            body = self.obj(e.body)
            if e.kind == "lam":
                return Lam(dom, abstract(body, e.name), e.name)
            if e.kind == "pi":
                return PiSort(dom, abstract(body, e.name), e.name)
            return PiSort(dom, body, "_")
        raise ParseError("equation class in object position", e.span, frozenset({"object"}))

    def domain(self, e: Surface) -> Class:
        try:
            return Incl(self.obj(e))
        except ParseError:
            return self.cls(e)

    def cls(self, e: Surface) -> Class:
        if isinstance(e, SKeyword) and e.word == "Sort":
            return SORT
        if isinstance(e, SEq):
            return EqCls(self.domain(e.sort), self.obj(e.lhs), self.obj(e.rhs))
        if isinstance(e, SParen):
            return self.domain(e.inner)
        if isinstance(e, SBinder) and e.kind in ("pi", "arrow"):
            dom = self.domain(e.domain)
            body = self.cls(e.body)
            if e.kind == "pi":
                return PiCls(dom, abstract(body, e.name), e.name)
            return PiCls(dom, body, "_")
        return Incl(self.obj(e))


def parse_object(text, file: str = "<input>") -> Object:
    return _Elab().obj(parse_surface(text, file))


def parse_class(text, file: str = "<input>") -> Class:
    return _Elab().cls(parse_surface(text, file))


def parse_signature(text, file: str = "<input>") -> list[SurfaceDecl]:
    p = _Parser(tokenize(_decode(text), file))
    elab = _Elab()
    out = []
    for name, body, end in p.decls():
        out.append(SurfaceDecl(name.text, elab.cls(body), _join(name.span, end.span), body))
    return out


# -- printer ---------------------------------------------------------------

TOP, APP, ATOM = 0, 1, 2


class _Printer:
    def __init__(self, root, numerals: bool):
        self.avoid = free_vars(root) if root is not None else set()
        self.numerals = numerals

    def fresh(self, hint: str, scope: list[str]) -> str:
        base = hint if hint and hint != "_" else "x"
        base = base.split("#")[0] or "x"
        if not IDENT_RE.match(base) or base in KEYWORDS:
            base = "x"
        name, i = base, 0
        while name in self.avoid or name in scope:
            i += 1
            name = f"{base}{i}"
        return name

    def numeral(self, t: Object) -> Optional[int]:
        n = 0
        while isinstance(t, App) and t.fun == Var("succ"):
            n += 1
            t = t.arg
        return n if t == Var("zero") else None

    @staticmethod
    def paren(s: str, need: bool) -> str:
        return f"({s})" if need else s

    def binder(self, t, scope, prec, as_class: bool) -> str:
        used = _mentions_index(t.body, 0)
        if isinstance(t, Lam):
            name = self.fresh(t.binder, scope)
            body = self.obj(t.body, scope + [name], TOP)
            return self.paren(f"[{name} : {self.dom(t.domain, scope, TOP)}] {body}", prec > TOP)
        show_body = self.cls if as_class else self.obj
        if not used:
            dom = self.dom(t.domain, scope, APP)
            return self.paren(f"{dom} -> {show_body(t.body, scope + ['_'], TOP)}", prec > TOP)
        name = self.fresh(t.binder, scope)
        dom = self.dom(t.domain, scope, TOP)
        return self.paren(f"{{{name} : {dom}}} {show_body(t.body, scope + [name], TOP)}", prec > TOP)

    def obj(self, t: Object, scope: list[str], prec: int) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, BVar):
            if t.index < len(scope):
                return scope[-1 - t.index]
            return f"#{t.index}"
        if isinstance(t, Bullet):
            return "*"
        if isinstance(t, Lvl):
            return "Lvl"
        if isinstance(t, LZero):
            return "lzero"
        if isinstance(t, LSuc):
            return self.paren(f"lsuc {self.obj(t.level, scope, ATOM)}", prec > APP)
        if isinstance(t, App):
            if self.numerals:
                n = self.numeral(t)
                if n is not None:
                    return str(n)
            head, args = spine(t)
            parts = [self.obj(head, scope, APP if isinstance(head, LSuc) else ATOM)]
            parts += [self.obj(a, scope, ATOM) for a in args]
            return self.paren(" ".join(parts), prec > APP)
        if isinstance(t, (Lam, PiSort)):
            return self.binder(t, scope, prec, as_class=False)
        raise TypeError(t)

    def dom(self, k: Class, scope, prec) -> str:
        if isinstance(k, Incl):
            return self.obj(k.obj, scope, prec)
        return self.cls(k, scope, prec)

    def cls(self, k: Class, scope: list[str], prec: int) -> str:
        if isinstance(k, SortCls):
            return "Sort"
        if isinstance(k, Incl):
            if isinstance(k.obj, PiSort):
                # parentheses keep the object reading of a Pi in class position
                return f"({self.obj(k.obj, scope, TOP)})"
            return self.obj(k.obj, scope, prec)
        if isinstance(k, EqCls):
            return (
                f"Eq({self.dom(k.sort, scope, TOP)}; {self.obj(k.lhs, scope, TOP)}; "
                f"{self.obj(k.rhs, scope, TOP)})"
            )
        if isinstance(k, PiCls):
            return self.binder(k, scope, prec, as_class=True)
        raise TypeError(k)


def _mentions_index(t, k: int) -> bool:
    if isinstance(t, BVar):
        return t.index == k
    if isinstance(t, App):
        return _mentions_index(t.fun, k) or _mentions_index(t.arg, k)
    if isinstance(t, (Lam, PiSort, PiCls)):
        return _mentions_index(t.domain, k) or _mentions_index(t.body, k + 1)
    if isinstance(t, Incl):
        return _mentions_index(t.obj, k)
    if isinstance(t, EqCls):
        return any(_mentions_index(x, k) for x in (t.sort, t.lhs, t.rhs))
    if isinstance(t, LSuc):
        return _mentions_index(t.level, k)
    return False


def show(node, numerals: bool = False) -> str:
    """Render an object, class, declaration, or declaration list."""
    if isinstance(node, SurfaceDecl):
        return f"{node.name} : {show(node.cls, numerals)}."
    if isinstance(node, (list, tuple)):
        return "\n".join(show(d, numerals) for d in node)
    p = _Printer(node, numerals)
    if isinstance(node, Class):
        return p.cls(node, [], TOP)
    return p.obj(node, [], TOP)


def show_decls(decls) -> str:
    """Render ``(name, class)`` pairs as signature text."""
    return "\n".join(f"{n} : {show(k)}." for n, k in decls)


print_node = show
