"""Concrete syntax for terms.

Grammar::

    term := par (";" par)*
    par  := atom ("*" atom)*
    atom := "m" | "u" | "d" | "e" | "g" | "id(" nat ")" | "(" term ")"

``f ; g`` runs ``f`` first (top to bottom); ``*`` is the tensor and binds
tighter than ``;``.  Whitespace is ignored.
"""

from __future__ import annotations

from typing import NamedTuple

from .terms import Gen, Generator, Id, Par, Seq, Term


class TermSyntaxError(SyntaxError):
    def __init__(self, message: str, text: str, line: int, column: int):
        super().__init__(message, ("<term>", line, column, text.splitlines()[line - 1] if text else ""))
        self.line = line
        self.column = column
        self.message = message

    def __str__(self) -> str:
        return f"{self.message} at line {self.line}, column {self.column}"


class _Tok(NamedTuple):
    kind: str  # "gen", "id", "num", ";", "*", "(", ")", "end"
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i, line, col = 0, 1, 1
    while i < len(src):
        c = src[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        if src.startswith("id", i):
            toks.append(_Tok("id", "id", line, col))
            i, col = i + 2, col + 2
        elif c in "mudeg":
            toks.append(_Tok("gen", c, line, col))
            i, col = i + 1, col + 1
        elif c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Tok("num", src[i:j], line, col))
            col += j - i
            i = j
        elif c in ";*()":
            toks.append(_Tok(c, c, line, col))
            i, col = i + 1, col + 1
        else:
            raise TermSyntaxError(f"unexpected character {c!r}", src, line, col)
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {kind!r}", tok)
        self.pos += 1
        return tok

    def fail(self, what: str, tok: _Tok):
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise TermSyntaxError(f"{what}, found {found}", self.src, tok.line, tok.col)

    def term(self) -> Term:
        t = self.par()
        while self.peek().kind == ";":
            self.pos += 1
            t = Seq(t, self.par())
        return t

    def par(self) -> Term:
        t = self.atom()
        while self.peek().kind == "*":
            self.pos += 1
            t = Par(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "gen":
            self.pos += 1
            return Gen(Generator(tok.text))
        if tok.kind == "id":
            self.pos += 1
            self.take("(")
            n = int(self.take("num").text)
            self.take(")")
            return Id(n)
        if tok.kind == "(":
            self.pos += 1
            t = self.term()
            self.take(")")
            return t
        self.fail("expected a generator, id(n) or '('", tok)


def parse(src: str) -> Term:
    p = _Parser(src)
    t = p.term()
    if p.peek().kind != "end":
        p.fail("expected ';', '*' or end of input", p.peek())
    return t


def show(t: Term) -> str:
    """Print a term so that ``parse(show(t)) == t``."""
    if isinstance(t, Gen):
        return t.gen.value
    if isinstance(t, Id):
        return f"id({t.width})"
    if isinstance(t, Seq):
        right = show(t.then)
        if isinstance(t.then, Seq):
            right = f"({right})"
        return f"{show(t.first)} ; {right}"
    if isinstance(t, Par):
        left, right = show(t.left), show(t.right)
        if isinstance(t.left, Seq):
            left = f"({left})"
        if isinstance(t.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} * {right}"
    raise TypeError(f"not a term: {t!r}")
