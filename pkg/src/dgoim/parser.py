"""Concrete syntax: ``\\x. t``, left-associative juxtaposition, ``t[x <- u]``, parentheses."""

from __future__ import annotations

import re

from .terms import (
    App, Lam, Name, Sub, Term, Var, fv, is_closed_well_named, is_pure, rename_fresh, supply_for,
)

_TOKEN = re.compile(r"\s*(?:(<-)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None or m.end() == i:
            break
        pos = m.start(m.lastindex) if m.lastindex else m.start()
        if m.group(1):
            toks.append(("arrow", "<-", pos))
        elif m.group(2):
            toks.append(("ident", m.group(2), pos))
        elif m.group(3):
            toks.append(("sym", m.group(3), pos))
        i = m.end()
    toks.append(("eof", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, names: dict[str, Name]):
        self.toks = _tokenize(src)
        self.i = 0
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, text=None):
        tok = self.peek()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def name(self, ident: str) -> Name:
        if ident not in self.names:
            self.names[ident] = Name(len(self.names), ident)
        return self.names[ident]

    def starts_atom(self) -> bool:
        kind, text, _ = self.peek()
        return kind == "ident" or (kind == "sym" and text in "(\\λ")

    def term(self) -> Term:
        kind, text, pos = self.peek()
        if kind == "sym" and text in ("\\", "λ"):
            self.i += 1
            params = [self.take("ident")[1]]
            while self.peek()[0] == "ident":
                params.append(self.take("ident")[1])
            self.take("sym", ".")
            body = self.term()
            for p in reversed(params):
                body = Lam(self.name(p), body)
            return body
        if not self.starts_atom():
            raise ParseError(f"expected a term, found {text or 'end of input'!r}", pos)
        t = self.postfix()
        while self.starts_atom():
            if self.peek()[1] in ("\\", "λ"):
                t = App(t, self.term())
                break
            t = App(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.atom()
        while self.peek()[:2] == ("sym", "["):
            self.i += 1
            x = self.name(self.take("ident")[1])
            self.take("arrow")
            u = self.term()
            self.take("sym", "]")
            t = Sub(t, x, u)
        return t

    def atom(self) -> Term:
        kind, text, pos = self.peek()
        if kind == "ident":
            self.i += 1
            return Var(self.name(text))
        if (kind, text) == ("sym", "("):
            self.i += 1
            t = self.term()
            self.take("sym", ")")
            return t
        raise ParseError(f"expected a term, found {text or 'end of input'!r}", pos)


def parse_term(src: str) -> Term:
    """Parse any term, explicit substitutions included."""
    p = _Parser(src, {})
    t = p.term()
    kind, text, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {text!r}", pos)
    return t


def parse(src: str) -> Term:
    """Parse an initial program: a closed pure term.

    Binders that reuse a name are renamed apart, so the result is always
    well-named.
    """
    t = parse_term(src)
    if not is_pure(t):
        raise ParseError("explicit substitutions are not allowed in an initial term", 0)
    if fv(t):
        raise ParseError(f"initial term must be closed; free: {', '.join(sorted(map(str, fv(t))))}", 0)
    if not is_closed_well_named(t):
        t = rename_fresh(t, supply_for(t))
    return t
